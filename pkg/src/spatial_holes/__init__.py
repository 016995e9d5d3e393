"""Cognitive-radio transmission over the unused spatial degrees of freedom of a
K-user MIMO interference-alignment network, with two-stage spatial-hole sensing."""

from .fast_sensing import (
    FastDecision,
    StackedSamples,
    detect_hole,
    fast_threshold,
    min_eig_statistic,
    stack_samples,
    tw2_cdf,
    tw2_quantile,
    weyl_bounds,
)
from .fine_sensing import (
    DetectionReport,
    GlrtDecision,
    SensingConfig,
    build_r_matrix,
    glrt_pfa,
    glrt_statistic,
    glrt_threshold,
    lambert_w,
    mle_signal_variance,
    run_sensing_pipeline,
    sensing_vector,
)
from .harness import (
    MetricRow,
    MetricTable,
    Scenario,
    emit_outputs,
    run_antenna_sweep_experiment,
    run_fast_sensing_experiment,
    run_fine_sensing_experiment,
    run_leakage_experiment,
    run_sumrate_experiment,
)
from .ia import IASolution, alignment_residual, direct_link_rank, distributed_ia, pair_rate
from .model import (
    ActivityPattern,
    ChannelSet,
    NetworkConfig,
    PairConfig,
    SecondaryConfig,
    draw_channels,
    draw_noise,
    draw_symbols,
    load_config,
    make_rng,
    parse_config_text,
    validate_config,
)
from .secondary import (
    SecondaryDesign,
    cr_leakage,
    design_secondary,
    interference_covariance,
    kantorovich_bounds,
    max_sinr_decoder,
    secondary_rate,
    secondary_sinr,
    stack_interference_matrix,
    underlay_precoder,
    zf_feasible,
    zf_precoder,
)

__version__ = "0.1.0"
