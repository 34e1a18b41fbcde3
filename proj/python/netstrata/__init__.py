"""Multi-layer interbank network construction and heavy-tail analysis."""

from ._netstrata import (
    Network,
    NetstrataError,
    __version__,
    bootstrap_gof,
    centrality,
    compare,
    degree_sample,
    estimate_xmin,
    fit_mle,
    generate_bundle,
    kendall_tau,
    layer_stats,
    load_network,
    run_cli,
    sample_from,
    stats_suite,
)

__all__ = [
    "Network",
    "NetstrataError",
    "__version__",
    "bootstrap_gof",
    "centrality",
    "compare",
    "degree_sample",
    "estimate_xmin",
    "fit_mle",
    "generate_bundle",
    "kendall_tau",
    "layer_stats",
    "load_network",
    "run_cli",
    "sample_from",
    "stats_suite",
]
