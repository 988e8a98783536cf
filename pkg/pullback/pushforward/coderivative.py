"""Matrix and rank of the coderivative ``g_* : Q(A) -> Q(B)`` at a realized marking."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Sequence

from pullback.algebra.linalg import rank as matrix_rank
from pullback.algebra.poly import Poly
from pullback.algebra.projective import INF, ProjPoint, image
from pullback.algebra.ratfunc import RationalFunction
from pullback.pushforward.qd import (
    AdmissibilityViolated,
    QuadraticDifferential,
    expand_in_basis,
    qd_basis,
)
from pullback.pushforward.trace import _split, fiber_polynomial, pushforward

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoderivativeMatrix:
    """Column ``j`` holds the pushforward of source basis element ``j``
    in coordinates of the target basis."""

    entries: list[list[Any]]
    source_basis: list[QuadraticDifferential] = field(default_factory=list)
    target_basis: list[QuadraticDifferential] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_basis), len(self.source_basis)

    def to_dict(self) -> dict[str, Any]:
        return {
            "shape": list(self.shape),
            "entries": [[str(x) for x in row] for row in self.entries],
            "source_basis": [str(q) for q in self.source_basis],
            "target_basis": [str(q) for q in self.target_basis],
        }


def critical_value_locus(g: RationalFunction) -> Poly:
    """Squarefree polynomial whose roots are the finite critical values
    coming from finite critical points."""
    _, (P, Q, _, _) = _split(g, g)
    W = P.derivative() * Q - P * Q.derivative()
    F = fiber_polynomial(P, Q, g.var)
    # divide out lc(F)^deg W: it vanishes at g(inf) whether or not inf is critical
    res = F.field(F.resultant(W.lift(F.field))) / F.lc ** W.degree
    return res.num.squarefree_part()


def check_admissible(
    g: RationalFunction, A_pts: Sequence[ProjPoint], B_pts: Sequence[ProjPoint]
) -> None:
    """``g(A) ⊆ B`` and every critical value of ``g`` lies in ``B``."""
    for a in A_pts:
        if image(g, a) not in B_pts:
            raise AdmissibilityViolated(f"g({a}) = {image(g, a)} is not a target marking")

    _, (P, Q, _, _) = _split(g, g)
    W = P.derivative() * Q - P * Q.derivative()
    n = max(P.degree, Q.degree)

    finite = [b.value for b in B_pts if not b.is_infinity]
    allowed = Poly.from_roots(P.field, finite, g.var)
    locus = critical_value_locus(g)
    if not (allowed % locus.lift(allowed.field)).is_zero():
        raise AdmissibilityViolated(
            f"critical values of {g} (roots of {locus}) are not all in B"
        )
    if W.gcd(Q).degree > 0 and INF not in B_pts:
        raise AdmissibilityViolated(f"{g} has a multiple pole but infinity is not in B")
    if W.degree < 2 * n - 2 and image(g, INF) not in B_pts:
        raise AdmissibilityViolated(
            f"infinity is critical for {g} but g(inf) = {image(g, INF)} is not in B"
        )


def coderivative_rank(
    g: RationalFunction, A_pts: Sequence[ProjPoint], B_pts: Sequence[ProjPoint]
) -> tuple[int, CoderivativeMatrix]:
    """Exact rank of ``g_*`` at the marking ``(A, B)``.

    Differentials on the source sphere marked by ``A`` are pushed to the
    target sphere marked by ``B`` and expanded in the target basis.
    """
    check_admissible(g, A_pts, B_pts)
    if len(A_pts) < 4 or len(B_pts) < 4:
        logger.debug("cotangent space is zero (|A|=%d, |B|=%d)", len(A_pts), len(B_pts))
        source = qd_basis(A_pts, g.var) if len(A_pts) >= 4 else []
        return 0, CoderivativeMatrix([], source, [])

    source = qd_basis(A_pts, g.var)
    target = qd_basis(B_pts, g.var)
    columns = [expand_in_basis(pushforward(g, q), B_pts) for q in source]
    entries = [[col[i] for col in columns] for i in range(len(target))]
    r = matrix_rank(entries)
    logger.debug("coderivative %dx%d has rank %d", len(target), len(source), r)
    return r, CoderivativeMatrix(entries, source, target)
