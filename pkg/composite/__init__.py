"""
Composite hypotheses: set divergences, hull minimization with optimality
certificates, and geometric-mean bounds.
"""

from composite.bounds import GeommeanBounds, geommean_composite_bounds
from composite.hulls import (
    CertificateReport,
    MinimizerPair,
    SolverConfig,
    minimize_Hr_over_hulls,
    optimality_certificate,
)
from composite.sets import HypothesisSet, smooth_set
from composite.setdiv import (
    AntiDivergenceResult,
    pairwise_table,
    set_anti_divergence,
    set_chernoff,
    set_divergence,
    set_hoeffding,
)

__all__ = [
    "AntiDivergenceResult",
    "CertificateReport",
    "GeommeanBounds",
    "HypothesisSet",
    "MinimizerPair",
    "SolverConfig",
    "geommean_composite_bounds",
    "minimize_Hr_over_hulls",
    "optimality_certificate",
    "pairwise_table",
    "set_anti_divergence",
    "set_chernoff",
    "set_divergence",
    "set_hoeffding",
    "smooth_set",
]
