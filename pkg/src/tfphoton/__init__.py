"""Grid-discretized simulator for time-frequency quantum information on single photons."""

from .errors import ConfigError, GridMismatchError, SupportGuardError
from .grid import (
    FrequencyGrid,
    balanced_grid,
    balanced_spacing,
    centered_dft,
    centered_idft,
    make_grid,
    parity_flip,
    spectral_to_temporal,
    temporal_to_spectral,
)
from .states import (
    JointSpectralAmplitude,
    Moments,
    SpectralAmplitude,
    SpectralDensityMatrix,
    ensure_support,
    fidelity,
    from_time_domain,
    gaussian_state,
    joint_spectral_amplitude,
    joint_temporal_amplitude,
    jsa_from_json_dict,
    jsa_marginals,
    jsa_to_json_dict,
    mix,
    moments,
    product_jsa,
    purity,
    spectral_amplitude,
    state_from_json_dict,
    state_to_json_dict,
    superposition,
    to_density,
)
from .gates import (
    Circuit,
    GateDescriptor,
    apply_circuit,
    apply_gate,
    cond_freq_time,
    cond_freq_time_via_fourier,
    cubic_phase,
    diag_phase,
    fourier,
    fourier_inverse,
    frac_fourier,
    freq_beam_splitter,
    freq_displace,
    freq_displace_via_fourier,
    global_phase_between,
    parse_circuit,
    quad_phase,
    time_displace,
    weyl_phase,
)
from .spdc import GaussianJsaSpec, gaussian_jsa, jsa_from_pump_phasematching
from .schmidt import (
    SchmidtDecomposition,
    bloch_messiah_separate,
    is_entangled,
    reconstruct,
    schmidt_decompose,
    schmidt_number,
)
from .phasespace import (
    WignerMap,
    WignerSlice,
    displaced_parity,
    hom_coincidence,
    hom_witness,
    joint_spectral_intensity,
    joint_temporal_intensity,
    mixed_intensity,
    parity_expectation,
    purity_from_wigner,
    two_photon_wigner_slice,
    wigner,
)
from .codes import (
    CatCodeSpec,
    DecodeResult,
    GkpCodeSpec,
    apply_shift_noise,
    decode,
    encode,
    logical_error_rate,
)

__version__ = "0.1.0"
