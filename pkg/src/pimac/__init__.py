"""Sum-rate analysis of a point-to-point link interfering with a 2-user MAC.

Deterministic (bit-level) and Gaussian models: regime classification,
achievable rates of treat-interference-as-noise variants and an
interference-alignment scheme, sum-capacity upper bounds, GDoF, constant-gap
audits, and a bit-exact simulator for the deterministic schemes.
"""

from .channel import (
    AlphaVector,
    DetChannel,
    GaussChannel,
    InterferenceLimitViolation,
    Regime,
    admissible,
    alpha_from_gauss,
    classify,
    classify_alpha,
    det_from_gauss,
)
from .det_rates import (
    DetRateReport,
    IaCpPlan,
    InadmissibleChannel,
    capacity,
    capacity_with_source,
    det_rate_report,
    iacp_plan,
    iacp_rate,
    min_upper_bound,
    naive_tin_rate,
    power_control_tin_max,
    tdma_tin_detail,
    tdma_tin_rate,
    ub1,
    ub2,
    ub3,
    ub4,
    ub_special,
)
from .det_sim import (
    DecodeReport,
    LevelLayout,
    batch_round_trip,
    decode,
    encode,
    exact_entropy,
    lemma4_check,
    random_messages,
    round_trip,
    scheme_layout,
)
from .gauss_rates import (
    GdofReport,
    PowerExponents,
    TimeShare,
    gaussian_entropy_diff_check,
    gdof_iacp,
    gdof_naive_tin,
    gdof_numeric,
    gdof_pacp,
    gdof_tdma_tin,
    gdof_tin_power_control_max,
    gdof_ub,
    iacp_preset,
    min_ub_g,
    naive_tin_rate_g,
    pacp_components,
    tdma_tin_rate_at,
    tdma_tin_rate_g,
    ub_g,
)
from .sweep import (
    GapRow,
    GridReport,
    gap_sweep,
    gdof_dominance_sweep,
    regime_map,
    regime_map_csv,
    verify_det_grid,
)

__version__ = "0.1.0"
