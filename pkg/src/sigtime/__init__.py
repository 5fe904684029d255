"""Schedule codes for buffered relays: counting, codecs, and rate analysis."""

from .ballot import (
    BallotTable,
    RateFigure,
    brute_force_count,
    catalan_closed_form,
    f_count,
    rate_figures,
    s_count,
)
from .codebook import (
    Codebook,
    FlowTrace,
    FlowViolationError,
    PathCountTable,
    build_codebook,
    check_unique_decodability,
    rank,
    simulate_flow,
    unrank,
    validate,
)
from .concat import (
    ConcatMetrics,
    ConcatScheme,
    concat_decode,
    concat_encode,
    metrics,
    plan,
)
from .relay import (
    InfoAmounts,
    LinkBudget,
    RateReport,
    ScenarioConfig,
    gauss_cap,
    info_amounts,
    link_budget,
    r_gc,
    r_st,
    r_st_opt,
    sweep,
    two_hop_bound,
)

__version__ = "0.1.0"
