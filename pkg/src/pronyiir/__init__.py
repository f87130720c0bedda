"""Prony, Pade and linear-prediction design of IIR filters.

Time-domain design from impulse-response samples, frequency-sampling design
from equally spaced response samples (both by exact interpolation or by
least-squared equation error), solution-error-optimal numerator design for a
fixed denominator, and identification of sums of exponentials.
"""

from .errors import (
    DegenerateModeError,
    EvaluationError,
    InvalidInputError,
    InvalidOrderError,
    InvalidSpecError,
    MultiplicityWarning,
    NoSolutionError,
    PronyError,
    RankDeficiencyWarning,
    SingularMatrixError,
    StabilityWarning,
)
from .freq_design import (
    FreqDesignReport,
    FrequencySpec,
    band_magnitudes,
    build_cyclic_partition,
    cyclic_matrix,
    design_freq,
    frequency_response,
    grid,
    linear_phase_samples,
    pseudo_impulse,
)
from .ident import ExponentialModel, SampledSignal, identify, synthesize
from .linalg import LstsqResult, dft, idft, lstsq, poly_roots, solve_lower_triangular
from .time_design import (
    DesignReport,
    Mode,
    Partition,
    RationalFilter,
    TimeDesignProblem,
    build_partition,
    design_time,
    impulse_response,
    solve_denominator,
    solve_numerator,
)
from .zeros import (
    ZeroDesignProblem,
    build_banded_A,
    design_zeros,
    solution_error,
    solve_numerator_solution_error,
)

__version__ = "0.1.0"
