"""Exact calculus of C-pairs: boundaries, covers, adapted tensors and morphisms."""

from .covers import classify_cover, cyclic_adapted_cover, quotient_pair
from .curves import (
    CurveCover, OrbifoldCurve, curve_degree, curve_irregularity, curve_is_special,
    curve_kappa, riemann_hurwitz_genus,
)
from .divisors import (
    INF, NEG_INF, CPairBoundary, PrimeDivisor, QDivisor, as_cpair, c_multiplicity,
    ceil_div, d_orb, floor_div, frac_part, reduce_div,
)
from .dsl import parse, serialize
from .errors import *  # noqa: F401,F403
from .geometry import Chart, DivisorialMorphism, MonomialCover, compose, pullback_qdiv, restrict_pair
from .kernels import BACKEND
from .morphisms import (
    b_birational, compare_boundaries, local_orbifold_morphism, log_canonical_check,
    nc_cmorphism, orbifold_morphism, pluricanonical_pullback,
)
from .runner import RunOptions, run
from .sheaves import (
    BasisTensor, CoverSetup, PoleAllowanceSheaf, check_inclusions, compute_adapted,
    membership_oracle, oracle_thresholds, reference_sheaf, residue_kernel_p1,
)
from .chern import GradedClass, cotangent_class, total_c_chern

__version__ = "0.1.0"
