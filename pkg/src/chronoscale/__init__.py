"""Young-type integral inequalities on time scales, with exact verification."""
from .calculus import QuadratureError, adaptive_simpson, delta_integral, h_n, nabla_integral
from .discrete import (
    ExampleName,
    ExampleRow,
    discrete_inverse_free,
    discrete_sandwich,
    example_suite,
    falling_factorial,
)
from .functions import FunctionSpec, parse_function_spec
from .monotone import (
    DiscontinuityDetected,
    Direction,
    MonotoneFn,
    MonotonicityViolation,
    PiecewiseFn,
    PiecewiseMode,
    inverse_eval,
    make_monotone,
    make_piecewise,
)
from .scalars import APPROX, EXACT, ScalarMode
from .timescale import (
    Interval,
    Jumps,
    NotInScaleError,
    Point,
    TimeScale,
    build_timescale,
    image_timescale,
    jump_operators,
)
from .young import (
    VARIANTS,
    BoundReport,
    Variant,
    YoungContext,
    YoungTable,
    best_upper_bound,
    inverse_free_sandwich,
    legendre_pair,
    make_context,
    phi_identity_check,
    piecewise_real_sandwich,
    piecewise_sandwich,
    sandwich_all,
    sandwich_bounds,
    tabulate,
    two_point_bound,
    young_check,
    young_functional,
)

__version__ = "0.1.0"
