"""Monte Carlo BER simulation of cooperative MIMO amplify-and-forward relay networks."""

from ._coopstc import (
    BERRecord,
    ConfigError,
    Error,
    ExperimentConfig,
    RangeError,
    __version__,
    bpsk_awgn_ber,
    estimate_diversity_order,
    format_csv,
    load_config,
    measure_gain_db,
    parse_config,
    parse_snr_grid,
    read_curve_csv,
    run_point,
    run_sweep,
    wilson_interval,
)


def curve(records):
    """[(snr_db, ber), ...] from a list of BERRecord."""
    return [(r.snr_db, r.ber) for r in records]


__all__ = [
    "BERRecord",
    "ConfigError",
    "Error",
    "ExperimentConfig",
    "RangeError",
    "__version__",
    "bpsk_awgn_ber",
    "curve",
    "estimate_diversity_order",
    "format_csv",
    "load_config",
    "measure_gain_db",
    "parse_config",
    "parse_snr_grid",
    "read_curve_csv",
    "run_point",
    "run_sweep",
    "wilson_interval",
]
