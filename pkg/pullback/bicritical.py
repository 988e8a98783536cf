"""Hurwitz correspondence for bicritical maps in normal form.

A bicritical map with critical values ``0`` and ``inf`` is, up to Mobius
maps, ``g(z) = ((z + x)/(z + y))^d``. Marking the target at
``inf, 0, 1, t`` and the source at ``inf, 0, 1, t'`` with ``g(inf) = 1``
and ``g(0) = t``, the remaining conditions cut out a curve in
``(x, y, t')``:

    split:  1 + x  = lam (1 + y),    y (t' + x) = lam' x (t' + y)
    cycle:  t' + x = lam (t' + y),   y (1 + x)  = lam' x (1 + y)

where ``lam, lam'`` are ``d``-th roots of unity other than 1. The linear
equation gives ``x = lam y + (lam - 1) r`` and the other one becomes a
quadratic in ``y``; ``t = (x/y)^d``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import count
from typing import Any, Iterator

from pullback.algebra.base import QQ, Field, common_field, parent_of
from pullback.algebra.fields import cyclotomic_field, root_of_unity
from pullback.algebra.poly import Poly
from pullback.algebra.projective import INF, ProjPoint, image
from pullback.algebra.ratfunc import FunctionField, RationalFunction
from pullback.algebra.roots import adjoin_sqrt, field_sqrt
from pullback.errors import InvariantError
from pullback.portrait import FiberSlot, Portrait
from pullback.validation import ValidationResult, require_checks

logger = logging.getLogger(__name__)


class DegenerateParameter(InvariantError):
    """``t'`` is 0 or 1, where the source markings collide."""


class TrivialRoot(InvariantError):
    """``lam`` or ``lam'`` equals 1."""


class WitnessSearchFailed(InvariantError):
    """No pair of parameters certified a nonconstant correspondence."""


# ---------------------------------------------------------------------------
# Classes and curve points
# ---------------------------------------------------------------------------

class Case(str, Enum):
    SPLIT_FIXED = "split"
    TWO_CYCLE = "cycle"


@dataclass(frozen=True)
class BicriticalClass:
    """Degree, root-of-unity exponents ``lam = zeta^k``, ``lam' = zeta^k'`` and case."""

    d: int
    lambda_exp: int
    lambda_prime_exp: int
    case: Case = Case.SPLIT_FIXED

    def __post_init__(self) -> None:
        object.__setattr__(self, "case", Case(self.case))
        if self.d < 2:
            raise InvariantError(f"bicritical maps have degree >= 2, got {self.d}")
        if self.lambda_exp % self.d == 0 or self.lambda_prime_exp % self.d == 0:
            raise TrivialRoot(
                f"lam = zeta^{self.lambda_exp}, lam' = zeta^{self.lambda_prime_exp} "
                f"must both differ from 1 (d = {self.d})"
            )

    @cached_property
    def field(self) -> Field:
        """``Q(zeta_d)``; plain Q for ``d = 2``."""
        return QQ if self.d == 2 else cyclotomic_field(self.d)

    def root(self, k: int) -> Any:
        if self.d == 2:
            return QQ(-1) ** (k % 2)
        return root_of_unity(self.field, k % self.d)

    @property
    def lam(self) -> Any:
        return self.root(self.lambda_exp)

    @property
    def lam_prime(self) -> Any:
        return self.root(self.lambda_prime_exp)

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "lambda": self.lambda_exp,
            "lambda_prime": self.lambda_prime_exp,
            "case": self.case.value,
        }

    def __str__(self) -> str:
        return f"d={self.d} k={self.lambda_exp} k'={self.lambda_prime_exp} {self.case.value}"


def bicritical_classes(d_max: int) -> Iterator[BicriticalClass]:
    for d in range(2, d_max + 1):
        for k in range(1, d):
            for k2 in range(1, d):
                for case in Case:
                    yield BicriticalClass(d, k, k2, case)


@dataclass(frozen=True)
class CurvePoint:
    x: Any
    y: Any
    t_prime: Any

    @property
    def field(self) -> Field:
        return common_field(
            common_field(parent_of(self.x), parent_of(self.y)), parent_of(self.t_prime)
        )

    def to_dict(self) -> dict[str, str]:
        return {"x": str(self.x), "y": str(self.y), "t_prime": str(self.t_prime)}


# ---------------------------------------------------------------------------
# Fibers over t'
# ---------------------------------------------------------------------------

def _setup(c: BicriticalClass, t_prime: Any) -> tuple[Any, ...]:
    K = common_field(c.field, parent_of(t_prime))
    tp = K(t_prime)
    if not tp or tp == 1:
        raise DegenerateParameter(f"t' = {t_prime} collides with a marked point")
    lam, lam2 = K(c.lam), K(c.lam_prime)
    r, s = (K.one(), tp) if c.case is Case.SPLIT_FIXED else (tp, K.one())
    alpha = lam * (1 - lam2)
    beta = s * (1 - lam * lam2) + r * (1 - lam2) * (lam - 1)
    gamma = -lam2 * s * r * (lam - 1)
    return K, tp, lam, lam2, r, s, alpha, beta, gamma


def discriminant(c: BicriticalClass, t_prime: Any) -> Any:
    *_, alpha, beta, gamma = _setup(c, t_prime)
    return beta * beta - 4 * alpha * gamma


def curve_fiber(c: BicriticalClass, t_prime: Any) -> list[CurvePoint]:
    """All curve points over *t_prime*, adjoining a square root when needed."""
    K, tp, lam, lam2, r, s, alpha, beta, gamma = _setup(c, t_prime)
    disc = beta * beta - 4 * alpha * gamma
    if not disc:
        ys = [-beta / (2 * alpha)]
    else:
        root = field_sqrt(disc)
        if root is None:
            _, root = adjoin_sqrt(disc)
        ys = [(-beta + root) / (2 * alpha), (-beta - root) / (2 * alpha)]

    points = []
    for y in ys:
        x = lam * y + (lam - 1) * r
        if not x or not y or (x / y) ** c.d == 1:
            logger.debug("%s: dropped degenerate root y=%s over t'=%s", c, y, tp)
            continue
        if y * (s + x) != lam2 * x * (s + y):
            raise InvariantError(f"root y={y} does not satisfy the curve equation")
        points.append(CurvePoint(x, y, tp))
    return points


def map_t(pt: CurvePoint, d: int) -> Any:
    return (pt.x / pt.y) ** d


@dataclass(frozen=True)
class CurveComponents:
    discriminant: RationalFunction
    reducible: bool
    branches: tuple[RationalFunction, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "discriminant": str(self.discriminant),
            "reducible": self.reducible,
            "branches": [str(b) for b in self.branches],
        }


def curve_components(c: BicriticalClass) -> CurveComponents:
    """Split test for the curve: it is reducible exactly when the
    discriminant is a square in ``K(t')``."""
    kt = FunctionField(c.field, "t")
    tp = kt.gen
    lam, lam2 = kt(c.lam), kt(c.lam_prime)
    r, s = (kt.one(), tp) if c.case is Case.SPLIT_FIXED else (tp, kt.one())
    alpha = lam * (1 - lam2)
    beta = s * (1 - lam * lam2) + r * (1 - lam2) * (lam - 1)
    gamma = -lam2 * s * r * (lam - 1)
    disc = beta * beta - 4 * alpha * gamma
    root = field_sqrt(disc)
    if root is None:
        return CurveComponents(disc, False)
    logger.info("curve for %s is reducible", c)
    return CurveComponents(
        disc, True, ((-beta + root) / (2 * alpha), (-beta - root) / (2 * alpha))
    )


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------

def normal_form(pt: CurvePoint, d: int) -> RationalFunction:
    """``((z + x)/(z + y))^d``."""
    kz = FunctionField(pt.field, "z")
    z = kz.gen
    return ((z + kz(pt.x)) / (z + kz(pt.y))) ** d


def _equals(g: RationalFunction, at: ProjPoint, expected: Any) -> bool:
    value = image(g, at)
    return not value.is_infinity and value.value == expected


def normal_form_check(pt: CurvePoint, c: BicriticalClass) -> ValidationResult:
    """Critical points, normalization and the case identities, all exact."""
    d = c.d
    g = normal_form(pt, d)
    t = map_t(pt, d)
    L = pt.field
    result = ValidationResult("normal form")

    W = g.num.derivative() * g.den - g.num * g.den.derivative()
    expected = Poly.from_roots(L, [-pt.x] * (d - 1) + [-pt.y] * (d - 1), "z")
    if W.degree == expected.degree and (W % expected.lift(W.field)).is_zero():
        result.add_valid("critical-points")
    else:
        result.add_error("critical-points", f"g' = {W} / Q^2 is not a multiple of {expected}")

    checks = [
        ("infinity-to-one", INF, L.one()),
        ("zero-to-t", ProjPoint(L.zero()), t),
    ]
    one, tp = ProjPoint(L.one()), ProjPoint(L(pt.t_prime))
    if c.case is Case.SPLIT_FIXED:
        checks += [("one-fixed", one, L.one()), ("tprime-to-t", tp, t)]
    else:
        checks += [("tprime-to-one", tp, L.one()), ("one-to-t", one, t)]
    for name, at, value in checks:
        if _equals(g, at, value):
            result.add_valid(name)
        else:
            result.add_error(name, f"g({at}) = {image(g, at)}, expected {value}")
    return require_checks(result)


def normal_form_markings(
    pt: CurvePoint, c: BicriticalClass
) -> tuple[RationalFunction, list[ProjPoint], list[ProjPoint]]:
    """``(g, A, B)`` with ``A = {inf, 0, 1, t'}`` and ``B = {inf, 0, 1, t}``."""
    L = pt.field
    g = normal_form(pt, c.d)
    A = [INF, ProjPoint(L.zero()), ProjPoint(L.one()), ProjPoint(L(pt.t_prime))]
    B = [INF, ProjPoint(L.zero()), ProjPoint(L.one()), ProjPoint(L(map_t(pt, c.d)))]
    return g, A, B


def bicritical_portrait(c: BicriticalClass, pt: CurvePoint) -> Portrait:
    """Dynamical portrait of the normal form.

    Source and target markings are identified as ``inf -> v1``,
    ``0 -> v2``, ``1 -> t1`` and ``t', t -> t2``, the naming used by the
    enumeration.
    """
    g, A, B = normal_form_markings(pt, c)
    names = ("v1", "v2", "t1", "t2")
    target = dict(zip(names, B))
    fibers: dict[str, list[FiberSlot]] = {}
    placed: set[str] = set()
    for b, at in target.items():
        labels = [a for a, src in zip(names, A) if image(g, src) == at]
        placed.update(labels)
        if b in ("v1", "v2"):
            fibers[b] = [FiberSlot(c.d, labels[0] if labels else None)]
        else:
            fibers[b] = [FiberSlot(1, a) for a in labels] + [FiberSlot(1)] * (c.d - len(labels))
    if placed != set(names):
        raise InvariantError(f"g maps {sorted(set(names) - placed)} off the marked target points")
    return Portrait(
        degree=c.d, A=names, B=names, fibers=fibers, dynamical=True, name=f"bicritical {c}"
    )


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

def witness_sequence() -> Iterator[int]:
    """-3, -2, 2, 3, -4, 4, -5, 5, ..."""
    yield from (-3, -2, 2, 3)
    for n in count(4):
        yield -n
        yield n


@dataclass(frozen=True)
class Witness:
    klass: BicriticalClass
    t_primes: tuple[Any, ...]
    fibers: tuple[tuple[CurvePoint, ...], ...]
    tried: int = 0
    normal_forms: tuple[tuple[RationalFunction, ...], ...] = field(default=(), compare=False)

    @property
    def t_values(self) -> list[list[Any]]:
        return [[map_t(p, self.klass.d) for p in fib] for fib in self.fibers]

    def to_dict(self) -> dict[str, Any]:
        return {
            "class": self.klass.to_dict(),
            "tprime": [str(t) for t in self.t_primes],
            "points": [[p.to_dict() for p in fib] for fib in self.fibers],
            "t_values": [[str(t) for t in ts] for ts in self.t_values],
            "normal_form": [[str(g) for g in gs] for gs in self.normal_forms],
            "tried": self.tried,
        }


def nonconstancy_witness(c: BicriticalClass, max_tries: int = 64) -> Witness:
    """Two parameters with nonempty fibers, one of them of size two."""
    found: list[tuple[Any, list[CurvePoint]]] = []
    tried = 0
    for n in witness_sequence():
        if tried >= max_tries:
            break
        tried += 1
        tp = QQ(n)
        if not discriminant(c, tp):
            continue
        fib = curve_fiber(c, tp)
        logger.debug("witness search %s: t'=%s gives %d points", c, tp, len(fib))
        if not fib:
            continue
        found.append((tp, fib))
        if len(found) >= 2 and any(len(f) == 2 for _, f in found):
            break
    if len(found) < 2 or not any(len(f) == 2 for _, f in found):
        raise WitnessSearchFailed(f"no witness for {c} after {tried} parameters")
    pair = found[:1] + found[-1:]
    return Witness(
        klass=c,
        t_primes=tuple(tp for tp, _ in pair),
        fibers=tuple(tuple(f) for _, f in pair),
        tried=tried,
        normal_forms=tuple(tuple(normal_form(p, c.d) for p in f) for _, f in pair),
    )
