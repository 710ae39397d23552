from sourcelab.correlation.analytic import (
    AnalyticPairSupplier,
    analytic_correlation_elastic,
    analytic_correlation_em,
    analytic_correlation_grid,
    analytic_correlation_poly,
    analytic_pair_values,
)
from sourcelab.correlation.monte_carlo import (
    CorrelationAccumulator,
    MonteCarloPairSupplier,
    ensemble_correlation_grid,
    mc_correlation,
)
from sourcelab.correlation.oracle import SamplerCorrelationOracle
from sourcelab.correlation.records import (
    CorrelationRecord,
    Pathway,
    SupStatistic,
    grid_records,
    write_records_csv,
)
from sourcelab.correlation.statistics import (
    estimate_residual_budget,
    sandwich_check,
    sup_from_grid,
    sup_statistic,
)
