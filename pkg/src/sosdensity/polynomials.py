"""Sparse multivariate polynomials over exact rational coefficients.

Exponent vectors are plain tuples of nonnegative ints; terms live in a dict
mapping exponent tuple -> Fraction.  All arithmetic is exact; floating point
enters only in evaluate().  Canonical term order is graded lexicographic
(total degree first, then lex on the exponent tuple).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Polynomial",
    "grlex_key",
    "parse_polynomial",
    "polynomial_from_json",
    "gradient_norm_samples",
]


def grlex_key(exponents: tuple[int, ...]) -> tuple:
    """Sort key realizing the graded lexicographic order."""
    return (sum(exponents), exponents)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        # exact binary expansion of the float, not a nearby decimal
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type: {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial in ``n_vars`` variables.

    Zero coefficients are never stored; the zero polynomial has an empty
    term map and degree 0.
    """

    __slots__ = ("n_vars", "terms", "degree")

    def __init__(self, n_vars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coef in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n_vars:
                    raise ValueError(f"exponent tuple {exp} has length {len(exp)}, expected {n_vars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _as_fraction(coef)
                if c != 0:
                    c0 = clean.get(exp)
                    clean[exp] = c if c0 is None else c0 + c
                    if clean[exp] == 0:
                        del clean[exp]
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "degree", max((sum(e) for e in clean), default=0))

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(n_vars: int) -> "Polynomial":
        return Polynomial(n_vars, {})

    @staticmethod
    def constant(n_vars: int, c) -> "Polynomial":
        return Polynomial(n_vars, {(0,) * n_vars: _as_fraction(c)})

    @staticmethod
    def variable(n_vars: int, i: int) -> "Polynomial":
        """The monomial x_{i+1} (0-based index i)."""
        if not 0 <= i < n_vars:
            raise ValueError(f"variable index {i} out of range for n_vars={n_vars}")
        exp = tuple(1 if j == i else 0 for j in range(n_vars))
        return Polynomial(n_vars, {exp: Fraction(1)})

    @staticmethod
    def monomial(n_vars: int, exponents: Sequence[int], coef=1) -> "Polynomial":
        return Polynomial(n_vars, {tuple(exponents): _as_fraction(coef)})

    # ---- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n_vars, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    # ---- arithmetic ---------------------------------------------------

    def _check_same(self, other: "Polynomial"):
        if self.n_vars != other.n_vars:
            raise ValueError(f"dimension mismatch: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n_vars, other)
        self._check_same(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return Polynomial(self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return Polynomial(self.n_vars, {e: cc * c for e, cc in self.terms.items()})
        self._check_same(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.n_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.n_vars, 1)
        # expanded by repeated multiplication: downstream code needs the
        # full coefficient map, not a factored form
        for _ in range(k):
            result = result * self
        return result

    # ---- evaluation ---------------------------------------------------

    def evaluate(self, x: Sequence[float]) -> float:
        if len(x) != self.n_vars:
            raise ValueError(f"point has length {len(x)}, expected {self.n_vars}")
        total = 0.0
        for exp, coef in self.terms.items():
            m = float(coef)
            for xi, e in zip(x, exp):
                if e:
                    m *= xi ** e
            total += m
        return total

    def evaluate_exact(self, x: Sequence) -> Fraction:
        """Evaluate at a rational point with exact arithmetic."""
        if len(x) != self.n_vars:
            raise ValueError(f"point has length {len(x)}, expected {self.n_vars}")
        xf = [_as_fraction(v) for v in x]
        total = Fraction(0)
        for exp, coef in self.terms.items():
            m = coef
            for xi, e in zip(xf, exp):
                if e:
                    m *= xi ** e
            total += m
        return total

    def __call__(self, x: Sequence[float]) -> float:
        return self.evaluate(x)

    # ---- calculus -----------------------------------------------------

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to variable i (0-based)."""
        terms: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            terms[tuple(new)] = coef * exp[i]
        return Polynomial(self.n_vars, terms)

    def antiderivative(self, i: int) -> "Polynomial":
        terms: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in self.terms.items():
            new = list(exp)
            new[i] += 1
            terms[tuple(new)] = coef / new[i]
        return Polynomial(self.n_vars, terms)

    def substitute_var(self, i: int, value: "Polynomial") -> "Polynomial":
        """Substitute a polynomial for variable i."""
        self._check_same(value)
        result = Polynomial.zero(self.n_vars)
        powers: dict[int, Polynomial] = {0: Polynomial.constant(self.n_vars, 1)}

        def power(k: int) -> Polynomial:
            if k not in powers:
                powers[k] = power(k - 1) * value
            return powers[k]

        for exp, coef in self.terms.items():
            rest = list(exp)
            e = rest[i]
            rest[i] = 0
            term = Polynomial.monomial(self.n_vars, rest, coef)
            result = result + term * power(e)
        return result

    def substitute_affine(self, scale: Sequence, shift: Sequence) -> "Polynomial":
        """Return q with q(y) = p(scale * y + shift), exactly."""
        if len(scale) != self.n_vars or len(shift) != self.n_vars:
            raise ValueError("scale/shift length must equal n_vars")
        sc = [_as_fraction(s) for s in scale]
        sh = [_as_fraction(s) for s in shift]
        if any(s == 0 for s in sc):
            raise ValueError("scale entries must be nonzero")
        result = Polynomial.zero(self.n_vars)
        # per-variable power cache of (s_i * y_i + t_i)^k
        subs = [
            Polynomial.variable(self.n_vars, i) * sc[i] + Polynomial.constant(self.n_vars, sh[i])
            for i in range(self.n_vars)
        ]
        cache: list[dict[int, Polynomial]] = [{0: Polynomial.constant(self.n_vars, 1)} for _ in range(self.n_vars)]

        def power(i: int, k: int) -> Polynomial:
            if k not in cache[i]:
                cache[i][k] = power(i, k - 1) * subs[i]
            return cache[i][k]

        for exp, coef in self.terms.items():
            term = Polynomial.constant(self.n_vars, coef)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def definite_integrate(self, var: int, lower: "Polynomial", upper: "Polynomial") -> "Polynomial":
        """Integrate out variable ``var`` between two polynomial bounds.

        The bounds must not involve ``var``; the result does not either.
        """
        self._check_same(lower)
        self._check_same(upper)
        for name, b in (("lower", lower), ("upper", upper)):
            if any(exp[var] != 0 for exp in b.terms):
                raise ValueError(f"{name} bound depends on the integration variable")
        anti = self.antiderivative(var)
        return anti.substitute_var(var, upper) - anti.substitute_var(var, lower)

    # ---- printing / serialization -------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            factors = []
            if coef != 1 or not any(exp):
                factors.append(str(coef) if coef.denominator == 1 else f"({coef})")
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial(n_vars={self.n_vars}, '{self}')"

    def to_json(self) -> dict:
        return {
            "n": self.n_vars,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }


def polynomial_from_json(obj) -> Polynomial:
    """Read the {"n": ..., "terms": [...]} wire form (dict or JSON string)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = int(obj["n"])
    terms = {}
    for t in obj["terms"]:
        exp = tuple(int(e) for e in t["exp"])
        coef = str(t["coef"])
        terms[exp] = Fraction(coef) if "." not in coef else _decimal_fraction(coef)
    return Polynomial(n, terms)


def _decimal_fraction(text: str) -> Fraction:
    """Exact rational value of a decimal literal like '1.05' (21/20)."""
    return Fraction(text.replace(" ", ""))


# ---- expression parser -----------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.\d+|\d+|\.\d+)|(?P<var>x\d+)|(?P<op>[-+*/^()]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for the ASCII polynomial grammar:

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := number | 'x'uint | '(' expr ')'

    Division is only defined when the divisor is a nonzero constant.
    """

    def __init__(self, text: str, n_vars: int):
        self.tokens = _tokenize(text)
        self.n_vars = n_vars
        self.i = 0
        self.text_len = len(text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.text_len)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected token {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val == "-":
            self.next()
            negate = True
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                _, _, pos = self.peek()
                q = self.factor()
                if val == "*":
                    p = p * q
                else:
                    c = q.constant_term()
                    if q.degree > 0 or c == 0:
                        raise ParseError("divisor must be a nonzero constant", pos)
                    p = p * (1 / c)
            else:
                return p

    def factor(self) -> Polynomial:
        p = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "number" or "." in val:
                raise ParseError("exponent must be a nonnegative integer literal", pos)
            p = p ** int(val)
        return p

    def base(self) -> Polynomial:
        kind, val, pos = self.next()
        if kind == "number":
            return Polynomial.constant(self.n_vars, _decimal_fraction(val))
        if kind == "var":
            idx = int(val[1:])
            if not 1 <= idx <= self.n_vars:
                raise ParseError(f"variable index {idx} out of range (n_vars={self.n_vars})", pos)
            return Polynomial.variable(self.n_vars, idx - 1)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_polynomial(text: str, n_vars: int) -> Polynomial:
    """Parse an ASCII polynomial expression; decimal literals become exact rationals."""
    return _Parser(text, n_vars).parse()


def gradient_norm_samples(p: Polynomial, points: Iterable[Sequence[float]]) -> float:
    """Max Euclidean norm of the exact symbolic gradient over sample points.

    A lower estimate of the true Lipschitz constant on the domain.
    """
    points = list(points)
    if not points:
        raise ValueError("point list must be nonempty")
    grad = [p.partial(i) for i in range(p.n_vars)]
    best = 0.0
    for x in points:
        norm2 = sum(g.evaluate(x) ** 2 for g in grad)
        best = max(best, norm2 ** 0.5)
    return best
