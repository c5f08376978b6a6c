from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from src.errors.submanifold import InvalidSystemError
from src.expr import Expr, VarSpace, parse, is_real_valued
from .point import PointOnM


@dataclass(frozen=True)
class DefiningSystem:
    """
    Ordered real-valued functions rho_1..rho_d on the ambient space, read on M.

    Attributes:
        functions: Expression trees.
        sources: Source text of each function (for reports).
        k: Intended k of the rank criterion (d = 2k + 1), if any.
    """
    functions: Tuple[Expr, ...]
    sources: Tuple[str, ...] = ()
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.functions:
            raise InvalidSystemError("A defining system needs at least one function")

    @classmethod
    def from_sources(cls, sources: Sequence[str], space: VarSpace, k: Optional[int] = None) -> "DefiningSystem":
        """Parses and checks each function; raises InvalidSystemError on a non-real one."""
        functions = []
        for source in sources:
            tree = parse(source, space)
            check = is_real_valued(tree, dimension=space.dimension)
            if not check:
                raise InvalidSystemError(f"Function {source!r} is not real-valued (witness {check.witness})")
            functions.append(tree)
        return cls(functions=tuple(functions), sources=tuple(sources), k=k)

    @property
    def d(self) -> int:
        return len(self.functions)

    def __len__(self) -> int:
        return len(self.functions)


@dataclass(frozen=True)
class Parametrization:
    """
    A candidate complex submanifold f: C^q -> C^N.

    Attributes:
        q: Complex parameter dimension.
        components: f_1..f_N over the parameter variables u_1..u_q (and conjugates).
        sources: Source text of the components.
    """
    q: int
    components: Tuple[Expr, ...]
    sources: Tuple[str, ...] = ()

    @classmethod
    def from_sources(cls, q: int, sources: Sequence[str]) -> "Parametrization":
        space = VarSpace.parameters(q)
        return cls(q=q, components=tuple(parse(s, space) for s in sources), sources=tuple(sources))


@dataclass(frozen=True, eq=False)
class Covector:
    """
    dbar_b (or d_b) of a function at a point, in the point's frame.

    Attributes:
        components: Complex n-vector; component i is conj(L)_i r for dbar_b, L_i r for d_b.
        point: Where it was computed.
    """
    components: np.ndarray
    point: Optional[PointOnM] = None

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True, eq=False)
class NondegeneracyVerdict:
    """Whether dr_1 ^ ... ^ dr_d != 0 on T(M) at every tested point."""
    is_nondegenerate: bool
    sample_count: int
    min_ratio: float
    witness: Optional[PointOnM] = None


class RankVerdictKind(str, Enum):
    COMPLEX_MANIFOLD = "complex-manifold"
    RANK_TOO_HIGH = "rank-too-high"
    RANK_TOO_LOW = "rank-too-low"
    RANK_NOT_CONSTANT = "rank-not-constant"


@dataclass(frozen=True, eq=False)
class RankVerdict:
    """
    Outcome of the dbar_b rank criterion on sampled points of the zero set.

    Attributes:
        kind: Verdict kind.
        k: Target rank.
        complex_dimension: n - k when kind is COMPLEX_MANIFOLD.
        ranks: Per-point ranks.
        tolerance: rank_tol used.
        sample_count: Points tested (the verdict is only certified there).
    """
    kind: RankVerdictKind
    k: int
    complex_dimension: Optional[int]
    ranks: Tuple[int, ...]
    tolerance: float
    sample_count: int

    @property
    def min_rank(self) -> int:
        return min(self.ranks)

    @property
    def max_rank(self) -> int:
        return max(self.ranks)

    @property
    def is_complex_manifold(self) -> bool:
        return self.kind == RankVerdictKind.COMPLEX_MANIFOLD


@dataclass(frozen=True, eq=False)
class CheckVerdict:
    """
    Generic PASS/FAIL verdict naming the failed clause.

    Attributes:
        passed: True when every clause holds at every tested point.
        failed_clause: Letter of the first failing clause ("a", "b", ...), or None.
        detail: Human-readable explanation.
        witness: Failing point (ambient or parameter coordinates).
        sample_count: Points tested.
        clauses: Per-clause outcome, in clause order.
    """
    passed: bool
    failed_clause: Optional[str] = None
    detail: str = ""
    witness: Optional[np.ndarray] = None
    sample_count: int = 0
    clauses: Tuple[Tuple[str, bool], ...] = ()

    @property
    def label(self) -> str:
        return "PASS" if self.passed else f"FAIL({self.failed_clause})"
