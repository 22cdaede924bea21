"""Workbench for linearised SHA-256 variants.

Three strands of analysis share this package:

* word-level linear algebra over Z_2^32 that derives collision-producing
  message differences for the fully ADD-linearised compression function,
* probability accounting and Monte Carlo checks for the variant that keeps
  Maj/Ch but drops the diffusion S-boxes,
* low-weight codeword search in the GF(2) linear code spanned by the
  XOR-linearised message expansion.
"""

from .primitives import (
    BoolMode,
    ExpansionKind,
    SboxMode,
    ch,
    compress,
    expand,
    maj,
    big_sigma0,
    big_sigma1,
    small_sigma0,
    small_sigma1,
)
from .variants import VariantConfig, make_variant
from .ringalg import build_A, build_E, invert, solve_disturbance_kernel
from .disturbance import (
    CORRECTION_COEFFS,
    build_characteristic,
    delay,
    find_collision_add_linear,
    propagate,
)
from .boolanalysis import (
    FirstStepsError,
    boolean_diff_table,
    derive_activity,
    isolated_condition_count,
    monte_carlo_local_collision,
    msb_disturbance,
    satisfy_first16,
)
from .codewords import (
    GeneratorMatrix,
    SearchParams,
    build_generator,
    extend_codeword,
    fig2_sweep,
    low_weight_search,
    single_bit_census,
    verify_codeword,
)

__version__ = "0.1.0"
