"""Wave-packet revivals in discrete-spectrum quantum systems.

Time scales from spectrum derivatives, exact autocorrelation and box-density
evolution, revival detection, beat extraction and commensurability tools for
two-dimensional systems.
"""

from .analysis import (
    BeatReport,
    Rational,
    RevivalEvent,
    best_fraction,
    commensurate,
    common_revival,
    detect_revivals,
    label_fraction,
    periodogram_beats,
    tune_box_ratio,
)
from .dynamics import (
    ComplexSeries,
    DensityGrid,
    TimeGrid,
    autocorrelation,
    autocorrelation_2d,
    autocorrelation_2d_at,
    autocorrelation_at,
    box_density,
    carpet,
)
from .errors import (
    DegenerateSpectrumError,
    DomainError,
    InconsistencyError,
    RevivalError,
    TruncationWarning,
)
from .spectrum import (
    Box1D,
    Box2D,
    Harmonic,
    Polynomial,
    RevivalClass,
    Rydberg,
    SeparableSum,
    SpectrumModel,
    SpectrumModel2D,
    TimeScales,
    TimeScales2D,
    classify,
    eval_derivative,
    eval_energy,
    time_scales,
    time_scales_2d,
)
from .wavepacket import (
    Coefficients,
    Coefficients2D,
    PacketSpec,
    gaussian_coefficients,
    packet_moments,
    product_coefficients_2d,
)

__version__ = "0.1.0"
