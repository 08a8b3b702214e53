from typing import Dict, List, Type

from src.common.errors import ParameterError
from src.solvers.base_solver import ModelSolver
from src.solvers.btp import BtpSolver
from src.solvers.bve import BveSolver

REGISTRY: Dict[str, Type[ModelSolver]] = {}


def register_solver(solver_cls: Type[ModelSolver]) -> None:
    REGISTRY[solver_cls.name.lower()] = solver_cls


def get_solver(name: str) -> Type[ModelSolver]:
    try:
        return REGISTRY[name.lower()]
    except KeyError:
        raise ParameterError(f"unknown model {name!r}; expected one of {sorted(REGISTRY)}") from None


def get_all_solvers() -> List[Type[ModelSolver]]:
    return list(REGISTRY.values())


register_solver(BtpSolver)
register_solver(BveSolver)
