"""Pfaffians, minor summation formulas and the Pfaffian integration theorem.

Exact checks run over :class:`fractions.Fraction` on finite weighted point
sets; numerical checks run in complex double precision on quadrature grids.
"""

from .measure import (
    BasisTable,
    KernelInstance,
    MeasureSpace,
    WorkGuardError,
    de_bruijn_sides,
    gauss_hermite_plane,
    ginibre_kernel,
    moment_matrix_g,
    random_kernel,
)
from .minorsum import corollary1_sides, lemma1_sides, lemma2_all_sides, lemma2_sides, lemma3_sides
from .pfcore import (
    SizeLimitError,
    det,
    pfaffian,
    pfaffian_oracle,
    random_skew,
    skew,
    submatrix,
)
from .series import TauPoly
from .symfun import (
    Partition,
    elementary_from_powersums,
    elementary_newton,
    generating_series_check,
    partitions_of,
)
from .theorem import (
    fredholm_det_identity,
    fredholm_pfaffian,
    fredholm_scalar_particular_case,
    remark13_equivalence,
    sigma_ell,
    theorem1_rhs,
    theorem1_verify,
    theorem2_sides,
)

__version__ = "0.1.0"
