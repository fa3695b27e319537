"""Exact computations with crossed Hopf group coalgebras over a finite group:
duals, mirrors, packed forms, the quantum double and its R-matrix, Drinfeld
elements, twists and the ribbon extension, each with an axiom checker."""

from .analysis import check_packed_double_embedding, classical_double, factorizability, is_semisimple
from .double import build_double, quantum_double
from .duals import TAlgebra, coop_inner_dual, inner_dual, outer_dual
from .exact_linalg import GF, QQ
from .finite_group import FiniteGroup, make_group
from .graded_core import pack_talgebra, pack_tcoalgebra, unpack_hopf
from .library import builtin
from .quasitriangular import RMatrixFamily, check_qt, check_yang_baxter, drinfeld_elements, mirror_qt
from .report import ValidationReport
from .ribbon import TwistFamily, check_twist_theta, check_twist_v, ribbon_extension, ribbon_from_semisimple
from .serialization import Document, load, parse, serialize
from .tcoalg import TCoalgebra, coopposite, mirror, validate

__version__ = "0.1.0"
