"""Exact Lebesgue moments for boxes, the standard simplex, and the unit ball.

Box and simplex moments are plain Fractions.  Ball moments carry a common
power of pi symbolically (PiMultiple) so that matrix assembly can stay
exact: for fixed dimension every even-moment shares the same pi power.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polynomials import Polynomial

__all__ = [
    "Domain",
    "PiMultiple",
    "moment",
    "moment_rational",
    "moment_table",
    "integrate_poly",
    "integrate_poly_exact",
    "domain_from_json",
]


def _double_factorial(k: int) -> int:
    if k in (0, -1):
        return 1
    if k < -1:
        raise ValueError("double factorial undefined below -1")
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


@dataclass(frozen=True)
class PiMultiple:
    """Exact rational multiple of an integer power of pi."""

    coef: Fraction
    pi_power: int

    def __float__(self) -> float:
        return float(self.coef) * math.pi ** self.pi_power

    def __repr__(self) -> str:
        return f"{self.coef}*pi^{self.pi_power}"


@dataclass(frozen=True)
class Domain:
    """Box / standard simplex / unit ball, with moment oracle attached.

    kind: "box" (bounds = per-coordinate (lo, hi) rationals), "simplex"
    (standard simplex of dimension n), or "ball" (unit ball at the origin;
    general balls are handled upstream by affine substitution into f).
    """

    kind: str
    n: int
    bounds: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self):
        if self.kind not in ("box", "simplex", "ball"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind == "box":
            if self.bounds is None or len(self.bounds) != self.n:
                raise ValueError("box needs one (lo, hi) pair per coordinate")
            clean = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.bounds)
            for lo, hi in clean:
                if not lo < hi:
                    raise ValueError(f"degenerate box side [{lo}, {hi}]")
            object.__setattr__(self, "bounds", clean)
        elif self.bounds is not None:
            raise ValueError("bounds apply to boxes only")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def box(bounds: Sequence[tuple]) -> "Domain":
        return Domain("box", len(bounds), tuple((Fraction(lo), Fraction(hi)) for lo, hi in bounds))

    @staticmethod
    def cube(n: int, lo=0, hi=1) -> "Domain":
        return Domain.box([(lo, hi)] * n)

    @staticmethod
    def simplex(n: int) -> "Domain":
        return Domain("simplex", n)

    @staticmethod
    def ball(n: int) -> "Domain":
        return Domain("ball", n)

    # ---- membership ---------------------------------------------------

    def contains(self, x: Sequence[float], slack: float = 1e-12) -> bool:
        if len(x) != self.n:
            return False
        if self.kind == "box":
            return all(float(lo) - slack <= xi <= float(hi) + slack for xi, (lo, hi) in zip(x, self.bounds))
        if self.kind == "simplex":
            return all(xi >= -slack for xi in x) and sum(x) <= 1 + slack
        return sum(xi * xi for xi in x) <= 1 + slack

    def volume(self) -> float:
        return float_moment(self, (0,) * self.n)

    def to_json(self) -> dict:
        if self.kind == "box":
            return {"kind": "box", "bounds": [[str(lo), str(hi)] for lo, hi in self.bounds]}
        return {"kind": self.kind, "n": self.n}


def domain_from_json(obj) -> Domain:
    """Read the {"kind": ...} wire form (dict or JSON string)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj["kind"]
    if kind == "box":
        return Domain.box([(Fraction(str(lo)), Fraction(str(hi))) for lo, hi in obj["bounds"]])
    if kind == "simplex":
        return Domain.simplex(int(obj["n"]))
    if kind == "ball":
        return Domain.ball(int(obj["n"]))
    raise ValueError(f"unknown domain kind {kind!r}")


# ---- moment oracles ---------------------------------------------------


def _check_alpha(dom: Domain, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != dom.n:
        raise ValueError(f"multi-index length {len(alpha)} != dimension {dom.n}")
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index entries must be nonnegative")
    return alpha


def _box_moment(bounds, alpha) -> Fraction:
    result = Fraction(1)
    for (lo, hi), a in zip(bounds, alpha):
        result *= (hi ** (a + 1) - lo ** (a + 1)) / (a + 1)
    return result


def _simplex_moment(n: int, alpha) -> Fraction:
    num = 1
    for a in alpha:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(sum(alpha) + n))


def ball_pi_power(n: int) -> int:
    """Power of pi common to every nonzero unit-ball moment in dimension n."""
    return n // 2


def _ball_moment(n: int, alpha) -> PiMultiple:
    p = ball_pi_power(n)
    if any(a % 2 for a in alpha):
        return PiMultiple(Fraction(0), p)
    k = n + sum(alpha)
    num = 1
    for a in alpha:
        num *= _double_factorial(a - 1)
    if n % 2 == 0:
        # Gamma(1 + k/2) = (k/2)! with k even
        coef = Fraction(num, math.factorial(k // 2) * 2 ** (sum(alpha) // 2))
    else:
        # Gamma(1 + k/2) = k!! sqrt(pi) / 2^((k+1)/2) with k odd
        coef = Fraction(num * 2 ** ((k + 1) // 2), _double_factorial(k) * 2 ** (sum(alpha) // 2))
    return PiMultiple(coef, p)


def moment(dom: Domain, alpha: Sequence[int]):
    """m_alpha(K): exact Fraction for box/simplex, PiMultiple for the ball."""
    alpha = _check_alpha(dom, alpha)
    if dom.kind == "box":
        return _box_moment(dom.bounds, alpha)
    if dom.kind == "simplex":
        return _simplex_moment(dom.n, alpha)
    return _ball_moment(dom.n, alpha)


def moment_rational(dom: Domain, alpha: Sequence[int]) -> Fraction:
    """The rational part of the moment (ball: the common pi power stripped)."""
    m = moment(dom, alpha)
    return m.coef if isinstance(m, PiMultiple) else m


def float_moment(dom: Domain, alpha: Sequence[int]) -> float:
    return float(moment(dom, alpha))


def _multi_indices(n: int, max_degree: int):
    if n == 1:
        for d in range(max_degree + 1):
            yield (d,)
        return
    for d in range(max_degree + 1):
        for rest in _multi_indices(n - 1, max_degree - d):
            yield (d,) + rest


@lru_cache(maxsize=64)
def _cached_table(dom: Domain, max_degree: int):
    n = dom.n
    table = {}
    if dom.kind == "box":
        # per-coordinate 1-D moments, combined via running partial products
        pows = [
            [(hi ** (k + 1) - lo ** (k + 1)) / (k + 1) for k in range(max_degree + 1)]
            for lo, hi in dom.bounds
        ]

        def rec(i, prefix, partial, left):
            if i == n - 1:
                for k in range(left + 1):
                    table[prefix + (k,)] = partial * pows[i][k]
                return
            for k in range(left + 1):
                rec(i + 1, prefix + (k,), partial * pows[i][k], left - k)

        rec(0, (), Fraction(1), max_degree)
    elif dom.kind == "simplex":
        facts = [math.factorial(k) for k in range(max_degree + n + 1)]

        def rec(i, prefix, num, left):
            if i == n - 1:
                for k in range(left + 1):
                    table[prefix + (k,)] = Fraction(num * facts[k], facts[max_degree - left + k + n])
                return
            for k in range(left + 1):
                rec(i + 1, prefix + (k,), num * facts[k], left - k)

        rec(0, (), 1, max_degree)
    else:
        for alpha in _multi_indices(n, max_degree):
            table[alpha] = _ball_moment(n, alpha)
    return table


def moment_table(dom: Domain, max_degree: int) -> dict:
    """All moments with |alpha| <= max_degree; memoized per (domain, degree)."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    return _cached_table(dom, max_degree)


def integrate_poly_exact(dom: Domain, p: Polynomial):
    """Sum of coefficients times moments; Fraction or PiMultiple (ball)."""
    if p.n_vars != dom.n:
        raise ValueError(f"polynomial has {p.n_vars} variables, domain has {dom.n}")
    if dom.kind == "ball":
        total = Fraction(0)
        for exp, coef in p.terms.items():
            total += coef * _ball_moment(dom.n, exp).coef
        return PiMultiple(total, ball_pi_power(dom.n))
    total = Fraction(0)
    for exp, coef in p.terms.items():
        total += coef * moment(dom, exp)
    return total


def integrate_poly(dom: Domain, p: Polynomial) -> float:
    """Integral of p over the domain, as a float."""
    return float(integrate_poly_exact(dom, p))
