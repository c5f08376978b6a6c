from .tolerance import ToleranceConfig
from .point import PointOnM
from .levi import LeviData, PseudoconvexityVerdict, PseudoconvexityReport, LeviFlatReport
from .strata import (
    Region, HypersurfaceSample, StratumSample, NecessaryConditionVerdict,
    DimensionEstimate, StratumReport, FiltrationReport,
)
from .submanifold import (
    DefiningSystem, Parametrization, Covector, NondegeneracyVerdict,
    RankVerdictKind, RankVerdict, CheckVerdict,
)
from .report import Report, THETA_CONVENTION


# Exporta las clases de datos del dominio
__all__ = [
    "ToleranceConfig", "PointOnM", "LeviData", "PseudoconvexityVerdict", "PseudoconvexityReport",
    "LeviFlatReport", "Region", "HypersurfaceSample", "StratumSample", "NecessaryConditionVerdict",
    "DimensionEstimate", "StratumReport", "FiltrationReport", "DefiningSystem", "Parametrization",
    "Covector", "NondegeneracyVerdict", "RankVerdictKind", "RankVerdict", "CheckVerdict",
    "Report", "THETA_CONVENTION",
]
