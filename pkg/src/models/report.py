from dataclasses import dataclass, field
from typing import Any, Dict, List

THETA_CONVENTION = "i/2(dbar-d)rho"


@dataclass
class Report:
    """
    Machine-readable outcome of one CLI command.

    Attributes:
        version: Tool version.
        command: Command name (analyze, strata, submanifold).
        convention: Contact-form convention, sign and tolerances.
        hypersurface: Defining function source and ambient dimension.
        results: Per-command payload records.
        summary: Verdicts and counts aggregated over the results.
        records: Flat per-point rows for CSV export.
    """
    version: str
    command: str
    convention: Dict[str, Any]
    hypersurface: Dict[str, Any]
    results: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    records: List[Dict[str, Any]] = field(default_factory=list)
