"""Group gradings on matrix algebras and on the Lie algebras sl, so and sp.

Everything works over a prime field ``F_p`` holding the roots of unity that
the grading group needs.  See the README for the command line.
"""

from .errors import GradalgError
from .field import RootField, field_for_group, make_field
from .forms import build_B_and_S, exist_involution, mu_from_delta, mu_from_type2
from .graded import KappaMap, build_F, fingerprint, verify_grading
from .groups import FinAbGroup, Subgroup, coset_table, make_group, subgroup_from_generators
from .isoclass import ParamTuple, census, decide, transform, verify_witness
from .lie import build_AI, build_AII, build_B, build_C, verify_lie
from .pauli import pauli_for

__version__ = "0.1.0"

__all__ = [
    "GradalgError", "RootField", "field_for_group", "make_field",
    "build_B_and_S", "exist_involution", "mu_from_delta", "mu_from_type2",
    "KappaMap", "build_F", "fingerprint", "verify_grading",
    "FinAbGroup", "Subgroup", "coset_table", "make_group", "subgroup_from_generators",
    "ParamTuple", "census", "decide", "transform", "verify_witness",
    "build_AI", "build_AII", "build_B", "build_C", "verify_lie",
    "pauli_for",
]
