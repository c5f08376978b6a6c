"""
Module Name: analysis_service

Service layer running the Levi-form analyses behind the command-line interface.

This module provides a centralized service to:
- Build the hypersurface described by a problem configuration
- Classify sampled points and decide pseudoconvexity (analyze)
- Detect strata S_q and check the 2q dimension condition (strata)
- Test defining systems and parametrizations for complex submanifolds (submanifold)
- Assemble deterministic Report objects for the storage layer

Example:
    >>> import logging
    >>> from src.config import load_problem_config
    >>> from src.service import AnalysisService
    >>> service = AnalysisService(logger=logging.getLogger(__name__))
    >>> report = service.analyze(load_problem_config("sphere.json"))
    >>> report.summary["verdict"]
    'pseudoconvex(+)'
"""

import logging
from typing import Any, Dict, List, Optional

import numpy as np

from src import __version__
from src.config import ProblemConfig
from src.errors import ApplicationError, NoDataError, ConfigurationError, AnalysisServiceError
from src.geometry import Hypersurface
from src.invariants import classify_point, pseudoconvexity_scan, levi_flat_check
from src.models import (
    LeviData, Report, StratumReport, DefiningSystem, Parametrization, THETA_CONVENTION,
)
from src.strata import (
    check_stratum_index, sample_hypersurface, sample_zero_set, detect_stratum, nullity_filtration,
)
from src.submanifold import (
    nondegeneracy_check, rank_test, wedge_check, parameter_samples, verify_parametrized,
    verify_radical_generators,
)


def point_coordinates(p: np.ndarray) -> List[List[float]]:
    return [[float(c.real), float(c.imag)] for c in p]


def point_record(levi: LeviData) -> Dict[str, Any]:
    """Per-point record of a report: point, residual, eigenvalues, A, nullity."""
    return {
        "point": point_coordinates(levi.point.p),
        "residual": float(levi.point.residual),
        "eigenvalues": [float(d) for d in levi.eigenvalues],
        "A": [float(a) for a in levi.coefficients],
        "nullity": int(levi.nullity),
    }


def coordinate_columns(p: np.ndarray) -> Dict[str, float]:
    columns: Dict[str, float] = {}
    for j, c in enumerate(p, start=1):
        columns[f"z{j}_re"] = float(c.real)
        columns[f"z{j}_im"] = float(c.imag)
    return columns


def flat_record(levi: LeviData, **extra: Any) -> Dict[str, Any]:
    """Flat CSV row of a point record."""
    row: Dict[str, Any] = dict(extra)
    row.update(coordinate_columns(levi.point.p))
    row["residual"] = float(levi.point.residual)
    for j, d in enumerate(levi.eigenvalues, start=1):
        row[f"d{j}"] = float(d)
    for k, a in enumerate(levi.coefficients):
        row[f"A{k}"] = float(a)
    row["nullity"] = int(levi.nullity)
    return row


class AnalysisService:
    """Provides the analyses of the command-line interface as Report-producing methods.

    Attributes:
        logger (logging.Logger): A logger instance for service events and errors.
    """

    def __init__(self, logger: logging.Logger) -> None:
        self.logger = logger
        self.logger.debug("AnalysisService initialized successfully.")

    def build_hypersurface(self, config: ProblemConfig) -> Hypersurface:
        """Parses rho over the configured variables; parse and reality errors propagate."""
        return Hypersurface.from_source(config.rho, config.dimension, config.variables, config.tolerances)

    def orientation(self, H: Hypersurface, config: ProblemConfig, points) -> int:
        """Configured sign, or the sign chosen by the pseudoconvexity scan of `points` (+1 when empty)."""
        if config.sign is not None:
            return config.sign
        if not points:
            return 1
        return pseudoconvexity_scan(H, points).sign

    def _report(self, command: str, config: ProblemConfig, sign: int) -> Report:
        return Report(
            version=__version__,
            command=command,
            convention={"theta": THETA_CONVENTION, "sign": sign, "tolerances": config.tolerances.as_dict()},
            hypersurface={"rho": config.rho, "N": config.dimension},
        )

    def _guard(self, command: str, action):
        try:
            return action()
        except ApplicationError:
            raise
        except Exception as e:
            self.logger.critical(f"UNEXPECTED error during '{command}': {e}", exc_info=True)
            raise AnalysisServiceError(f"Unexpected error in '{command}': {e}") from e

    def analyze(self, config: ProblemConfig) -> Report:
        """
        Samples M, classifies every point and decides pseudoconvexity.

        Raises:
            NoDataError: If no seed of the region reaches M.
        """
        return self._guard("analyze", lambda: self._analyze(config))

    def _analyze(self, config: ProblemConfig) -> Report:
        self.logger.info(f"Starting analysis of '{config.rho}' in C^{config.dimension}")
        H = self.build_hypersurface(config)
        sample = sample_hypersurface(H, config.region)
        if not sample:
            raise NoDataError(f"No point of M found in the region ({sample.seed_count} seeds)")

        scan = pseudoconvexity_scan(H, sample.points)
        sign = config.sign if config.sign is not None else scan.sign
        levi = [classify_point(H, x, sign) for x in sample.points]
        flat = levi_flat_check(H, sample.points)

        report = self._report("analyze", config, sign)
        report.results = [point_record(data) for data in levi]
        report.records = [flat_record(data, index=i) for i, data in enumerate(levi)]
        nullities = [data.nullity for data in levi]
        report.summary = {
            "sample_count": len(sample),
            "seed_count": sample.seed_count,
            "dropped": sample.dropped,
            "merged": sample.merged,
            "verdict": scan.verdict.value,
            "violations": scan.violations,
            "witness": None if scan.witness is None else point_coordinates(scan.witness.p),
            "witness_eigenvalues": None if scan.witness_eigenvalues is None
            else [float(d) for d in scan.witness_eigenvalues],
            "levi_flat": flat.is_levi_flat,
            "nullity_counts": {str(q): nullities.count(q) for q in range(H.n + 1)},
        }
        self.logger.info(f"Analysis finished: {len(sample)} points, verdict {scan.verdict.value}")
        return report

    def strata(self, config: ProblemConfig, q: Optional[int] = None) -> Report:
        """
        Detects S_q (or every S_1..S_n when no level is configured) with dimension verdicts.

        Raises:
            InvalidStratumIndexError: If q is outside 1..n.
            NoDataError: If no seed of the region reaches M.
        """
        return self._guard("strata", lambda: self._strata(config, q))

    def _stratum_entry(self, report: StratumReport) -> Dict[str, Any]:
        estimate = report.estimate
        return {
            "q": report.q,
            "member_count": len(report.members),
            "dimension": estimate.dimension,
            "used_samples": estimate.used_samples,
            "required_samples": estimate.required_samples,
            "radius": estimate.radius,
            "verdict": report.verdict.value,
            "seed_count": report.seed_count,
            "rejected": report.rejected,
            "members": [dict(point_record(m.levi), residuals=list(m.residuals)) for m in report.members],
        }

    def _strata(self, config: ProblemConfig, q: Optional[int]) -> Report:
        H = self.build_hypersurface(config)
        q = q if q is not None else config.strata.q
        center, radius = config.strata.center, config.strata.radius
        if q is not None:
            check_stratum_index(H, q)
        sample = sample_hypersurface(H, config.region)
        if not sample:
            raise NoDataError(f"No point of M found in the region ({sample.seed_count} seeds)")
        sign = self.orientation(H, config, sample.points)

        if q is None:
            self.logger.info(f"Detecting the nullity filtration of '{config.rho}'")
            filtration = nullity_filtration(H, config.region, sign, config.tolerances, center, radius,
                                            points=sample.points)
            reports = filtration.reports
            nested = filtration.nested
        else:
            self.logger.info(f"Detecting S_{q} of '{config.rho}'")
            reports = [detect_stratum(H, config.region, q, sign, config.tolerances, center, radius,
                                      points=sample.points)]
            nested = None

        report = self._report("strata", config, sign)
        report.results = [self._stratum_entry(r) for r in reports]
        report.records = [
            flat_record(m.levi, q=r.q, index=i) for r in reports for i, m in enumerate(r.members)
        ]
        report.summary = {
            "sample_count": len(sample),
            "verdicts": {str(r.q): r.verdict.value for r in reports},
            "dimensions": {str(r.q): r.estimate.dimension for r in reports},
            "nested": nested,
        }
        return report

    def submanifold(self, config: ProblemConfig) -> Report:
        """
        Runs the configured defining-system and parametrization checks.

        Raises:
            ConfigurationError: If the configuration carries neither block.
            NoDataError: If the zero set of the system has no sampled point.
        """
        if config.system is None and config.parametrization is None:
            raise ConfigurationError("The submanifold command needs a 'system' or a 'parametrization' block")
        return self._guard("submanifold", lambda: self._submanifold(config))

    def _system_entry(self, H: Hypersurface, config: ProblemConfig, report: Report) -> Dict[str, Any]:
        block = config.system
        system = DefiningSystem.from_sources(block.functions, H.space, block.k)
        zeros = sample_zero_set(H, config.region, system.functions, config.tolerances)
        if not zeros:
            raise NoDataError("The zero set of the defining system has no sampled point on M")

        entry: Dict[str, Any] = {"candidate": "system", "functions": list(block.functions), "points": len(zeros)}
        nondegenerate = nondegeneracy_check(H, system, zeros.points)
        entry["nondegenerate"] = {
            "value": nondegenerate.is_nondegenerate,
            "min_ratio": nondegenerate.min_ratio,
            "witness": None if nondegenerate.witness is None else point_coordinates(nondegenerate.witness.p),
        }
        verdict = None if nondegenerate.is_nondegenerate else "degenerate"

        if block.k is not None:
            rank = rank_test(H, system, zeros.points, block.k)
            label = (f"{rank.kind.value}(dim {rank.complex_dimension})" if rank.is_complex_manifold
                     else rank.kind.value)
            entry["rank"] = {
                "k": rank.k,
                "verdict": label,
                "min_rank": rank.min_rank,
                "max_rank": rank.max_rank,
                "ranks": list(rank.ranks),
                "tolerance": rank.tolerance,
                "sample_count": rank.sample_count,
            }
            verdict = verdict or label
            for i, (x, r) in enumerate(zip(zeros.points, rank.ranks)):
                report.records.append(dict(candidate="system", index=i, **coordinate_columns(x.p), rank=r))
        if block.q is not None:
            wedge = wedge_check(H, system, block.q, zeros.points)
            entry["wedge"] = self._check_entry(wedge)
            verdict = verdict or wedge.label
            if block.radical:
                radical = verify_radical_generators(H, system, block.q, config.region, config.tolerances)
                entry["radical"] = self._check_entry(radical)
                entry["radical"]["verdict"] = "PASS-necessary" if radical.passed else radical.label
        entry["verdict"] = verdict or "nondegenerate"
        return entry

    @staticmethod
    def _check_entry(check) -> Dict[str, Any]:
        return {
            "verdict": check.label,
            "detail": check.detail,
            "clauses": {clause: ok for clause, ok in check.clauses},
            "witness": None if check.witness is None else point_coordinates(np.atleast_1d(check.witness)),
            "sample_count": check.sample_count,
        }

    def _parametrization_entry(self, H: Hypersurface, config: ProblemConfig) -> Dict[str, Any]:
        block = config.parametrization
        f = Parametrization.from_sources(block.q, block.components)
        if block.samples is not None:
            params = [np.array(u, dtype=complex) for u in block.samples]
        else:
            params = list(parameter_samples(block.q, block.box, block.count, block.seed))
        check = verify_parametrized(H, f, params)
        entry = {"candidate": "parametrization", "q": block.q, "components": list(block.components)}
        entry.update(self._check_entry(check))
        return entry

    def _submanifold(self, config: ProblemConfig) -> Report:
        H = self.build_hypersurface(config)
        points = sample_hypersurface(H, config.region).points if config.sign is None else []
        report = self._report("submanifold", config, self.orientation(H, config, points))
        results = []
        if config.system is not None:
            self.logger.info(f"Testing defining system {list(config.system.functions)}")
            results.append(self._system_entry(H, config, report))
        if config.parametrization is not None:
            self.logger.info(f"Testing parametrization {list(config.parametrization.components)}")
            results.append(self._parametrization_entry(H, config))
        report.results = results
        report.summary = {"verdicts": [entry["verdict"] for entry in results]}
        return report
