from ._monk import (
    check,
    eq,
    factorize,
    model_check,
    normalize,
    prove_check,
    reconstruct,
)

__all__ = [
    "check",
    "eq",
    "factorize",
    "model_check",
    "normalize",
    "prove_check",
    "reconstruct",
]
