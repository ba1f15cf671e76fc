"""paramac: exact nonsymmetric/parasymmetric Macdonald polynomials, Cherednik
constant-term pairings, and graded characters of cyclic parahoric modules."""

from .cartan import CartanType, Coweight, Root, RootSystem, Weight, build_root_system
from .groupring import LaurentPoly, TruncatedQSeries, divide_exact, render_plain
from .macdonald import MacdonaldResult, engine
from .pairing import KernelSpec, pairing_context
from .weyl import WeylGroup, weyl_group

__version__ = "0.1.0"

__all__ = [
    "CartanType", "Coweight", "Root", "RootSystem", "Weight", "build_root_system",
    "LaurentPoly", "TruncatedQSeries", "divide_exact", "render_plain",
    "MacdonaldResult", "engine", "KernelSpec", "pairing_context",
    "WeylGroup", "weyl_group", "__version__",
]
