"""Exact weight polynomials of mixed tilting sheaves on (affine) flag varieties.

Elements are passed as words: comma-separated generator labels ("1,2,1"),
identity "e". Polynomials come back as dicts {exponent: int coefficient}.
"""

from ._mixtilt import (
    CoxeterError,
    CoxeterSystem,
    FormatError,
    SelfDualityError,
    run,
    __version__,
)

__all__ = ["CoxeterError", "CoxeterSystem", "FormatError", "SelfDualityError", "run", "__version__"]
