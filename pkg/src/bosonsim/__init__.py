"""Classical simulation of multi-photon interferometry.

Exact and noisy boson sampling, event probabilities under partial
distinguishability and loss, photon counting in binned output modes,
Bayesian validation of samplers, and optimization over interferometers.
"""

__version__ = "0.1.0"

from .interferometers import (
    CircuitElement,
    Interferometer,
    beam_splitter,
    compose,
    fourier,
    hadamard,
    phase_shift,
    rand_haar,
    to_lossy,
)
from .model import (
    Bosonic,
    DarkCountFockSample,
    Distinguishable,
    DistributionTable,
    Event,
    FockDetection,
    FockSample,
    GuardError,
    Input,
    ModeOccupation,
    NumericError,
    OneParameterInterpolation,
    PartitionCountsAll,
    UserGram,
    compute_probability_fock,
    first_modes,
    full_distribution,
    gram_of,
    scattering_submatrix,
    tvd,
)
from .optimize import UnitaryObjective, finite_difference_gradient, riemannian_ascent
from .partitions import (
    Partition,
    Subset,
    characteristic_function,
    full_bunching_probability,
    partition_counts_all,
)
from .permanents import gram_permanent, permanent_naive, permanent_ryser, validate_gram
from .samplers import (
    SamplerConfig,
    noisy_distribution,
    sample_bosonic,
    sample_dark_counts,
    sample_distinguishable,
    sample_event,
    sample_mis,
    sample_noisy,
)
from .validation import (
    ConfidenceTrace,
    Hypothesis,
    bayesian_confidence,
    estimate_distinguishability,
    fock_hypothesis,
    run_validation_trials,
)
