"""Exact-arithmetic generation and log-behavior certification of
binomial-sum integer sequences.

Every verdict in this package is decided by exact integer, rational or
Q(√2) arithmetic; decimals appear only as renderings of already-certified
values.  All public objects are immutable, and every operation is a pure
function, so concurrent use needs no coordination.
"""

from .bfile import BFileError, TermCache, read_bfile, write_bfile
from .certificates import (
    DEFAULT_XIA,
    R_RATIO_BOUND,
    SignCertificate,
    XiaParameters,
    assemble_theorem_report,
    check_interlacing,
    check_xia,
    eval_bound,
    find_min_n0,
    sign_beyond,
    verify_inductive_step,
)
from .checks import (
    CheckRangeError,
    DepthLedger,
    ExplorationLedger,
    check_log_shape,
    check_ratio_log_concave,
    check_ratio_monotone,
    check_root_log_concave,
    check_root_monotone,
    explore_infinite_log_concavity,
    l_operator,
    limit_enclosure,
    root_ratio_trend,
)
from .definitions import DefinitionError, load_custom_definition
from .introots import int_nth_root, nth_root_decimal, pow_cmp, power_difference
from .qpoly import BoundFunction, QuadPolynomial, QuadRationalFunction
from .quadratic import SQRT2, QuadNumber, rational_to_decimal
from .report import (
    CertificateReport,
    CheckResult,
    Status,
    Step,
    Verdict,
    render_check,
    render_report,
)
from .sequences import (
    BUILTIN_DEFS,
    R_DEF,
    S_DEF,
    BinomialFactor,
    BinomialSummand,
    Recurrence,
    SequenceDef,
    SequenceError,
    TermStore,
    build_by_summation,
    build_terms,
    eval_binomial_sum,
    extend_by_recurrence,
    ratios,
    seed_store,
    verify_recurrence,
)

__version__ = "0.1.0"
