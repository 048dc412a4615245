"""Multiaccurate proxies for missing sensitive attributes and
fairness-constrained downstream training."""

from .data import (
    BinningRecipe,
    Dataset,
    FiniteDistribution,
    RawTable,
    SynthSpec,
    acs_recipes,
    apply_binning,
    load_csv,
    sample_from,
    split,
    standardize,
    synth_cond_independent,
)
from .downstream import (
    Ensemble,
    ReductionsConfig,
    TradeoffPoint,
    expected_stats,
    fit_reductions,
    pareto_frontier,
)
from .fairness import (
    AlphaReport,
    FairnessSpec,
    alpha_to_slack,
    audit_axis_thresholds,
    audit_random_thresholds,
    disparity,
    group_rate,
    measure_alpha,
)
from .learners import (
    CscInstance,
    RegressionModel,
    ThresholdClassifier,
    csc_cost,
    exhaustive_1d_csc,
    fit_least_squares,
    fit_logistic,
    prc_classify,
)
from .proxy import (
    Alg2Config,
    AuditorStep,
    DualState,
    FtplConfig,
    HProxyConfig,
    ProxyModel,
    auditor_step,
    fit_alg1_ftpl,
    fit_alg2_linear,
    fit_baseline,
    fit_function_class,
    fit_h_proxy,
    fit_mse,
    load_proxy,
    proxy_loss,
    save_proxy,
    stack_proxies,
    statistical_parity_mode,
    train_proxy,
)
from .transform import WeightedBinaryDataset, wbst

__version__ = "0.1.0"
