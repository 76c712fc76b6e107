"""Degree-2r sum-of-squares density upper bounds via a generalized eigenproblem.

The order-r bound is the smallest generalized eigenvalue of A v = lambda B v,
where A and B are moment matrices indexed by all monomials of degree <= r.
Both matrices are assembled in exact rational arithmetic and converted to
floating point once; the eigensolve reduces to a standard dense symmetric
problem after factoring B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh

from .moments import Domain, ball_pi_power, integrate_poly, moment_rational, moment_table
from .polynomials import Polynomial, grlex_key

__all__ = [
    "MonomialBasis",
    "BoundResult",
    "ConditioningError",
    "assemble_AB",
    "smallest_generalized_eigenpair",
    "compute_bound",
    "bound_sweep",
    "dump_matrix",
]

# Hard guard against returning garbage from a numerically indefinite B.
# Equilibrated eigh keeps ~7 correct digits up to roughly 1e15; beyond 1e16
# the Cholesky step is no longer trustworthy.
COND_LIMIT = 1e16


@dataclass(frozen=True)
class MonomialBasis:
    """All exponent vectors of total degree <= r in n variables, graded-lex."""

    n: int
    r: int
    exponents: tuple[tuple[int, ...], ...]

    @staticmethod
    def build(n: int, r: int) -> "MonomialBasis":
        if r < 0:
            raise ValueError("order r must be >= 0")
        exps = []

        def rec(prefix, remaining, left):
            if remaining == 1:
                for d in range(left + 1):
                    exps.append(prefix + (d,))
                return
            for d in range(left + 1):
                rec(prefix + (d,), remaining - 1, left - d)

        rec((), n, r)
        exps.sort(key=grlex_key)
        return MonomialBasis(n, r, tuple(exps))

    def __len__(self):
        return len(self.exponents)

    def vector_to_polynomial(self, v) -> Polynomial:
        terms = {exp: Fraction(float(c)) for exp, c in zip(self.exponents, v) if c != 0}
        return Polynomial(self.n, terms)


class ConditioningError(RuntimeError):
    """B is numerically indefinite or too ill-conditioned to trust."""

    def __init__(self, cond_B: float, detail: str = ""):
        msg = (
            f"moment matrix B is numerically unusable (cond ~ {cond_B:.3e}); "
            "reduce r or rescale the domain"
        )
        if detail:
            msg += f" [{detail}]"
        super().__init__(msg)
        self.cond_B = cond_B


@dataclass(frozen=True)
class BoundResult:
    r: int
    value: float
    eigvec: np.ndarray
    density: Polynomial
    cond_B: float
    residual: float
    basis: MonomialBasis


def assemble_AB(f: Polynomial, dom: Domain, r: int, table=None):
    """Exact assembly of the moment matrices A (f-weighted) and B.

    A[a, b] = sum_d f_d m_{a+b+d}(K),  B[a, b] = m_{a+b}(K).
    For the ball the common pi power is reinstated as a single float factor
    at conversion time.
    """
    if f.n_vars != dom.n:
        raise ValueError(f"polynomial has {f.n_vars} variables, domain has {dom.n}")
    basis = MonomialBasis.build(dom.n, r)
    need = 2 * r + f.degree
    if table is None:
        table = moment_table(dom, need)
    if dom.kind == "ball":
        rat = {alpha: m.coef for alpha, m in table.items()}
        scale = math.pi ** ball_pi_power(dom.n)
    else:
        rat = table
        scale = 1.0

    m = len(basis)
    fterms = list(f.terms.items())
    A = np.empty((m, m))
    B = np.empty((m, m))
    for i, a in enumerate(basis.exponents):
        for j in range(i, m):
            b = basis.exponents[j]
            ab = tuple(x + y for x, y in zip(a, b))
            B[i, j] = B[j, i] = float(rat[ab]) * scale
            acc = Fraction(0)
            for d, coef in fterms:
                acc += coef * rat[tuple(x + y for x, y in zip(ab, d))]
            A[i, j] = A[j, i] = float(acc) * scale
    return A, B, basis


def smallest_generalized_eigenpair(A: np.ndarray, B: np.ndarray):
    """Smallest eigenvalue of A v = lambda B v with symmetric A, s.p.d. B.

    The pencil is diagonally equilibrated first (an exact congruence, so the
    eigenvalues are unchanged); this is what makes high orders on wide boxes
    tractable in double precision.
    """
    diag = np.diag(B)
    if not np.all(np.isfinite(diag)) or np.any(diag <= 0):
        raise ConditioningError(np.inf, "nonpositive diagonal in B")
    D = 1.0 / np.sqrt(diag)
    Bs = B * D[:, None] * D[None, :]
    As = A * D[:, None] * D[None, :]
    # enforce exact symmetry against float roundoff
    Bs = 0.5 * (Bs + Bs.T)
    As = 0.5 * (As + As.T)

    bw = np.linalg.eigvalsh(Bs)
    cond_B = float(bw[-1] / bw[0]) if bw[0] > 0 else np.inf
    if bw[0] <= 0 or cond_B > COND_LIMIT:
        raise ConditioningError(cond_B)

    w, V = eigh(As, Bs)
    lam = float(w[0])
    v = D * V[:, 0]
    # normalize v^T B v = 1, first nonzero coordinate positive
    v = v / math.sqrt(float(v @ B @ v))
    nz = np.flatnonzero(np.abs(v) > 1e-14 * np.max(np.abs(v)))
    if nz.size and v[nz[0]] < 0:
        v = -v
    return lam, v, cond_B


def compute_bound(f: Polynomial, dom: Domain, r: int, table=None) -> BoundResult:
    """Order-r upper bound with the optimal degree-2r SOS density attached."""
    A, B, basis = assemble_AB(f, dom, r, table=table)
    lam, v, cond_B = smallest_generalized_eigenpair(A, B)
    bv = B @ v
    residual = float(np.linalg.norm(A @ v - lam * bv) / np.linalg.norm(bv))
    g = basis.vector_to_polynomial(v)
    density = g * g
    return BoundResult(r=r, value=lam, eigvec=v, density=density, cond_B=cond_B, residual=residual, basis=basis)


def bound_sweep(f: Polynomial, dom: Domain, r_max: int, r_min: int = 1) -> list[BoundResult]:
    """Bounds for r = r_min..r_max, sharing one moment table.

    Stops at the first conditioning failure (the remaining orders would only
    be less trustworthy).
    """
    if r_max < r_min:
        raise ValueError("empty order range")
    table = moment_table(dom, 2 * r_max + f.degree)
    results = []
    for r in range(r_min, r_max + 1):
        try:
            results.append(compute_bound(f, dom, r, table=table))
        except ConditioningError:
            break
    return results


def dump_matrix(M: np.ndarray) -> str:
    """Plain-text square matrix, one row per line, for diffing."""
    return "\n".join(" ".join(repr(float(x)) for x in row) for row in M)
