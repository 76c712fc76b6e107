"""Machine-checkable O(1/sqrt(r)) rate certificates from a truncated Gaussian.

The density H_{r,a}(x) = (2*pi*sigma^2)^{-n/2} * phi_{2r}(||x-a||^2 / (2*sigma^2))
is a globally nonnegative polynomial (phi_{2r} is an even-degree Taylor
truncation of exp(-t)); normalized over K it is feasible for the order-2r
density program, so its expectation upper-bounds the hierarchy value.  The
certificate evaluates that expectation together with the explicit constant
zeta(K) and checks the rate inequality

    f^{(r)}_{K,a} - f_min  <=  zeta(K) * M_f / sqrt(2r + 1)    for r >= r_K / 2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .moments import Domain, integrate_poly, moment_table
from .polynomials import Polynomial

__all__ = [
    "GeomParams",
    "CertificateReport",
    "geom_params",
    "p_constant",
    "phi_coeffs",
    "taylor_density",
    "gaussian_mass",
    "lipschitz_bound",
    "certificate",
]

SUP_SAFETY = 1.1  # inflation of the grid estimate of sup |f|
MC_POINTS = 10**6  # Monte-Carlo budget for non-box Gaussian masses


# ---- geometry constants ----------------------------------------------


@dataclass(frozen=True)
class GeomParams:
    """Geometric constants of the domain entering the rate bound.

    D: squared diameter; w_min: minimal width; eta/eps_K: the ball-density
    constants (every ball of radius <= eps_K around a point of K captures
    at least an eta fraction of its volume); r_K: order threshold for the
    rate inequality; gamma_n: volume of the n-dimensional unit ball.
    """

    D: float
    w_min: float
    eta: float
    eps_K: float
    r_K: float
    gamma_n: float


def _cone_eta(n: int, theta: float) -> float:
    s = math.sin(theta)
    return (s / (1.0 + s)) ** n


def _threshold_order(D: float, eps_K: float, n: int) -> float:
    if eps_K <= 1.0:
        return max(D * math.e / (2.0 * eps_K**3), float(n))
    return D * math.e / 2.0


def geom_params(dom: Domain) -> GeomParams:
    """Constants for boxes (star-shaped w.r.t. the inscribed ball), the
    standard simplex, and the unit ball.

    Boxes and the simplex use the interior-cone construction: a convex body
    star-shaped with respect to a ball of radius rho satisfies the cone
    condition with angle theta = 2*arcsin(rho / (2*sqrt(D))), giving
    eta = (sin(theta)/(1+sin(theta)))^n and eps_K = rho.  The unit ball
    satisfies it directly with theta = pi/3.

    w_min for the simplex is 1/sqrt(n): the minimal width of a simplex is
    attained between a facet hyperplane and the supporting hyperplane at
    the opposite vertex; here the facet sum(x) = 1 paired with the origin
    gives 1/sqrt(n), while every coordinate facet pair gives width 1.
    (Validated numerically over random directions in the test suite.)
    """
    n = dom.n
    gamma_n = math.pi ** (n / 2) / math.gamma(1 + n / 2)
    if dom.kind == "box":
        sides = [float(hi - lo) for lo, hi in dom.bounds]
        D = sum(s * s for s in sides)
        rho = min(sides) / 2.0
        theta = 2.0 * math.asin(rho / (2.0 * math.sqrt(D)))
        return GeomParams(
            D=D,
            w_min=min(sides),
            eta=_cone_eta(n, theta),
            eps_K=rho,
            r_K=_threshold_order(D, rho, n),
            gamma_n=gamma_n,
        )
    if dom.kind == "simplex":
        D = 2.0
        rho = 1.0 / (n + math.sqrt(n))
        theta = 2.0 * math.asin(rho / (2.0 * math.sqrt(D)))
        return GeomParams(
            D=D,
            w_min=1.0 / math.sqrt(n),
            eta=_cone_eta(n, theta),
            eps_K=rho,
            r_K=_threshold_order(D, rho, n),
            gamma_n=gamma_n,
        )
    # unit ball
    D = 4.0
    return GeomParams(
        D=D,
        w_min=2.0,
        eta=_cone_eta(n, math.pi / 3.0),
        eps_K=1.0,
        r_K=_threshold_order(D, 1.0, n),
        gamma_n=gamma_n,
    )


def p_constant(n: int) -> float:
    """p(n) = integral over t >= 0 of t^n * exp(-t^2/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1.0
    if n % 2 == 0:
        k = n // 2
        prod = 1
        for j in range(1, k + 1):
            prod *= 2 * j - 1
        return math.sqrt(math.pi / 2.0) * prod
    k = (n - 1) // 2
    prod = 1
    for j in range(1, k + 1):
        prod *= 2 * j
    return float(prod)


# ---- the truncated-Gaussian density ----------------------------------


def phi_coeffs(r: int) -> Polynomial:
    """phi_{2r}(t) = sum_{k=0}^{2r} (-t)^k / k!, a univariate Polynomial.

    Even-order truncation of exp(-t); nonnegative on the whole real line.
    """
    if r < 0:
        raise ValueError("order r must be >= 0")
    terms = {(k,): Fraction((-1) ** k, math.factorial(k)) for k in range(2 * r + 1)}
    return Polynomial(1, terms)


def taylor_density(a: Sequence[float], sigma: float, r: int, n: int) -> Polynomial:
    """H_{r,a}(x) = (2*pi*sigma^2)^{-n/2} * phi_{2r}(||x-a||^2 / (2*sigma^2)).

    sigma and the prefactor are exactified at their binary float values, so
    the returned degree-4r Polynomial can be integrated exactly by the
    moment oracle.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if len(a) != n:
        raise ValueError(f"center has length {len(a)}, expected {n}")
    sig2 = Fraction(float(sigma)) ** 2
    t = Polynomial.zero(n)  # ||x - a||^2 / (2*sigma^2)
    for i in range(n):
        d = Polynomial.variable(n, i) - Polynomial.constant(n, Fraction(float(a[i])))
        t = t + d * d
    t = t * (1 / (2 * sig2))
    phi = phi_coeffs(r)
    h = Polynomial.zero(n)
    tpow = Polynomial.constant(n, 1)
    for k in range(phi.degree + 1):
        c = phi.coefficient((k,))
        if c:
            h = h + tpow * c
        if k < phi.degree:
            tpow = tpow * t
    prefactor = (2.0 * math.pi * float(sig2)) ** (-n / 2.0)
    return h * Fraction(prefactor)


def gaussian_mass(dom: Domain, a: Sequence[float], sigma: float, seed: int = 0) -> tuple[float, float]:
    """Integral over K of the Gaussian G_a (this is 1/C_{K,a}).

    Returns (mass, standard_error).  Boxes are exact products of 1-D
    cumulative differences (standard error 0); the simplex and ball use
    seeded Monte-Carlo with MC_POINTS uniform points.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    n = dom.n
    if len(a) != n:
        raise ValueError(f"center has length {len(a)}, expected {n}")
    if dom.kind == "box":
        mass = 1.0
        root2 = math.sqrt(2.0)
        for (lo, hi), ai in zip(dom.bounds, a):
            u = (float(hi) - ai) / (sigma * root2)
            l = (float(lo) - ai) / (sigma * root2)
            mass *= 0.5 * (math.erf(u) - math.erf(l))
        return mass, 0.0
    rng = np.random.default_rng(seed)
    if dom.kind == "simplex":
        pts = rng.dirichlet(np.ones(n + 1), size=MC_POINTS)[:, :n]
        vol = 1.0 / math.factorial(n)
    else:
        z = rng.standard_normal((MC_POINTS, n))
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        radii = rng.random(MC_POINTS) ** (1.0 / n)
        pts = z * radii[:, None]
        vol = math.pi ** (n / 2) / math.gamma(1 + n / 2)
    d2 = np.sum((pts - np.asarray(a, dtype=float)) ** 2, axis=1)
    g = (2.0 * math.pi * sigma**2) ** (-n / 2.0) * np.exp(-d2 / (2.0 * sigma**2))
    mass = vol * float(np.mean(g))
    stderr = vol * float(np.std(g) / math.sqrt(MC_POINTS))
    return mass, stderr


# ---- Lipschitz bound --------------------------------------------------


def _domain_grid(dom: Domain, seed: int = 0) -> np.ndarray:
    """Evaluation points for estimating sup |f| over the domain."""
    n = dom.n
    if dom.kind == "box":
        if n <= 3:
            axes = [np.linspace(float(lo), float(hi), 101) for lo, hi in dom.bounds]
            mesh = np.meshgrid(*axes, indexing="ij")
            return np.stack([m.ravel() for m in mesh], axis=1)
        rng = np.random.default_rng(seed)
        lo = np.array([float(l) for l, _ in dom.bounds])
        hi = np.array([float(h) for _, h in dom.bounds])
        # stratified per coordinate (Latin-hypercube style), plus the corners' midpoint
        m = 10**5
        u = (rng.permuted(np.tile(np.arange(m), (n, 1)), axis=1).T + rng.random((m, n))) / m
        return lo + u * (hi - lo)
    rng = np.random.default_rng(seed)
    m = 10**5
    if dom.kind == "simplex":
        pts = rng.dirichlet(np.ones(n + 1), size=m)[:, :n]
        vertices = np.vstack([np.zeros(n), np.eye(n)])
        return np.vstack([pts, vertices])
    z = rng.standard_normal((m, n))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    radii = rng.random(m) ** (1.0 / n)
    return np.vstack([z * radii[:, None], z[:1000]])


def lipschitz_bound(f: Polynomial, dom: Domain) -> float:
    """Upper estimate of the Lipschitz constant: 2 d^2 sup|f| / w_min.

    sup |f| is a grid/sample maximum inflated by SUP_SAFETY, so the result
    is an estimate of a valid bound, not a certified quantity.
    """
    d = f.degree
    if d == 0:
        return 0.0
    pts = _domain_grid(dom)
    sup = max(abs(f.evaluate(p)) for p in pts) * SUP_SAFETY
    return 2.0 * d * d * sup / geom_params(dom).w_min


# ---- the certificate --------------------------------------------------


@dataclass(frozen=True)
class CertificateReport:
    """All quantities of the rate certificate at order r around center a.

    holds is tri-state: "true" / "false" are the literal inequality when
    its preconditions (r >= r_K/2, scale eps within eps_K) are met;
    "false-precondition" means the inequality was not applicable.
    """

    a: tuple[float, ...]
    r: int
    sigma: float
    eps: float
    eps_capped: bool
    C_Ka: float
    c_rKa: float
    f_rKa: float
    f_min: float
    M_f: float
    zeta: float
    rhs: float
    holds: str
    geom: GeomParams
    mass_stderr: float

    def to_json(self) -> dict:
        out = {
            "a": list(self.a),
            "r": self.r,
            "sigma": self.sigma,
            "eps": self.eps,
            "eps_capped": self.eps_capped,
            "C_Ka": self.C_Ka,
            "c_rKa": self.c_rKa,
            "f_rKa": self.f_rKa,
            "f_min": self.f_min,
            "M_f": self.M_f,
            "zeta": self.zeta,
            "rhs": self.rhs,
            "holds": self.holds,
            "mass_stderr": self.mass_stderr,
            "geom": {
                "D": self.geom.D,
                "w_min": self.geom.w_min,
                "eta": self.geom.eta,
                "eps_K": self.geom.eps_K,
                "r_K": self.geom.r_K,
                "gamma_n": self.geom.gamma_n,
            },
        }
        return out


def zeta_constant(gp: GeomParams, n: int) -> float:
    """zeta(K) = 6n * (mu1 * max(1, sqrt(D e / 2)) + mu2 / sqrt(2 pi))."""
    mu1 = 1.0 + n * p_constant(n) * math.sqrt(math.e) / gp.eta
    mu2 = n * math.sqrt(math.e) * gp.D ** ((n + 1) / 2.0) / gp.eta
    return 6.0 * n * (mu1 * max(1.0, math.sqrt(gp.D * math.e / 2.0)) + mu2 / math.sqrt(2.0 * math.pi))


def certificate(
    f: Polynomial,
    dom: Domain,
    a: Sequence[float],
    r: int,
    f_min: float,
    table=None,
) -> CertificateReport:
    """Evaluate the rate certificate for f on the domain at order r.

    a is a known (or estimated) minimizer; f_min the known minimum.  The
    scale eps is chosen as (D e / (2(2r+1)))^((2r+1)/(2(2r+1)+n)), capped
    at eps_K, and sigma = eps.
    """
    if r < 1:
        raise ValueError("order r must be >= 1")
    if f.n_vars != dom.n:
        raise ValueError(f"polynomial has {f.n_vars} variables, domain has {dom.n}")
    if not dom.contains(a, slack=1e-9):
        raise ValueError(f"center {list(a)} lies outside the domain")
    n = dom.n
    gp = geom_params(dom)

    m = 2 * r + 1
    eps_raw = (gp.D * math.e / (2.0 * m)) ** (m / (2.0 * m + n))
    eps_capped = eps_raw > gp.eps_K
    eps = min(eps_raw, gp.eps_K)
    sigma = eps

    H = taylor_density(a, sigma, r, n)
    need = H.degree + f.degree
    if table is None:
        table = moment_table(dom, need)
    else:
        have = max(sum(alpha) for alpha in table)
        if have < need:
            raise ValueError(f"moment table covers degree {have}, need {need}")

    inv_cr = integrate_poly(dom, H)
    if inv_cr <= 0:
        raise ValueError("truncated Gaussian has nonpositive mass on the domain")
    c_rKa = 1.0 / inv_cr
    f_rKa = c_rKa * integrate_poly(dom, f * H)

    mass, mass_stderr = gaussian_mass(dom, a, sigma)
    C_Ka = 1.0 / mass

    M_f = lipschitz_bound(f, dom)
    zeta = zeta_constant(gp, n)
    rhs = zeta * M_f / math.sqrt(m)

    if eps_capped or r < gp.r_K / 2.0:
        holds = "false-precondition"
    else:
        holds = "true" if f_rKa - f_min <= rhs else "false"

    return CertificateReport(
        a=tuple(float(x) for x in a),
        r=r,
        sigma=sigma,
        eps=eps,
        eps_capped=eps_capped,
        C_Ka=C_Ka,
        c_rKa=c_rKa,
        f_rKa=f_rKa,
        f_min=float(f_min),
        M_f=M_f,
        zeta=zeta,
        rhs=rhs,
        holds=holds,
        geom=gp,
        mass_stderr=mass_stderr,
    )
