import math
from fractions import Fraction

import numpy as np
import pytest

from sosdensity.bounds import (
    ConditioningError,
    MonomialBasis,
    assemble_AB,
    bound_sweep,
    compute_bound,
    dump_matrix,
    smallest_generalized_eigenpair,
)
from sosdensity.moments import Domain, integrate_poly
from sosdensity.polynomials import parse_polynomial


class TestMonomialBasis:
    @pytest.mark.parametrize("n,r", [(1, 0), (2, 3), (3, 4)])
    def test_size_and_order(self, n, r):
        basis = MonomialBasis.build(n, r)
        assert len(basis) == math.comb(n + r, r)
        degs = [sum(e) for e in basis.exponents]
        assert degs == sorted(degs)
        assert basis.exponents[0] == (0,) * n

    def test_vector_to_polynomial(self):
        basis = MonomialBasis.build(2, 1)
        p = basis.vector_to_polynomial([1.0, 0.0, -2.0])
        assert p.coefficient((0, 0)) == 1
        assert p.coefficient((1, 0)) == -2  # grlex: (0,0), (0,1), (1,0)

    def test_negative_order(self):
        with pytest.raises(ValueError):
            MonomialBasis.build(2, -1)


class TestAssembly:
    def test_matrices_against_hand_computation(self):
        # f = x on [0,1], r=1: basis {1, x};
        # B = [[1, 1/2], [1/2, 1/3]], A = [[1/2, 1/3], [1/3, 1/4]]
        f = parse_polynomial("x1", 1)
        A, B, basis = assemble_AB(f, Domain.cube(1), 1)
        assert np.allclose(B, [[1, 0.5], [0.5, 1 / 3]])
        assert np.allclose(A, [[0.5, 1 / 3], [1 / 3, 0.25]])

    def test_symmetry(self):
        f = parse_polynomial("x1^2*x2 - x2 + 1", 2)
        A, B, _ = assemble_AB(f, Domain.box([(-2, 2), (0, 3)]), 3)
        assert np.array_equal(A, A.T)
        assert np.array_equal(B, B.T)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            assemble_AB(parse_polynomial("x1", 1), Domain.cube(2), 1)


class TestEigenpair:
    def test_rejects_indefinite(self):
        A = np.eye(2)
        B = np.array([[1.0, 0.0], [0.0, -1.0]])
        with pytest.raises(ConditioningError):
            smallest_generalized_eigenpair(A, B)

    def test_diagonal_pencil(self):
        A = np.diag([3.0, 1.0, 2.0])
        B = np.eye(3)
        lam, v, cond = smallest_generalized_eigenpair(A, B)
        assert lam == pytest.approx(1.0)
        assert cond == pytest.approx(1.0)
        assert abs(v[1]) == pytest.approx(1.0)


class TestComputeBound:
    def test_r0_gives_mean_value(self):
        # constant density: bound = average of f over the domain
        f = parse_polynomial("x1", 1)
        b = compute_bound(f, Domain.cube(1), 0)
        assert b.value == pytest.approx(0.5, abs=1e-12)

    def test_density_normalized_and_sos(self):
        f = parse_polynomial("x1^2 - x1*x2", 2)
        dom = Domain.box([(-1, 2), (0, 1)])
        b = compute_bound(f, dom, 3)
        assert integrate_poly(dom, b.density) == pytest.approx(1.0, abs=1e-9)
        # density is an explicit square, hence nonnegative everywhere
        rng = np.random.default_rng(0)
        pts = rng.uniform([-1, 0], [2, 1], size=(200, 2))
        assert min(b.density.evaluate(p) for p in pts) >= 0.0
        # bound equals the expectation of f under the density
        fh = f * b.density
        assert integrate_poly(dom, fh) == pytest.approx(b.value, rel=1e-9)

    def test_residual_small(self):
        f = parse_polynomial("x1^4 - x1^2", 1)
        b = compute_bound(f, Domain.box([(-2, 2)]), 6)
        assert b.residual < 1e-8

    def test_constant_objective(self):
        b = compute_bound(parse_polynomial("5", 1), Domain.cube(1), 3)
        assert b.value == pytest.approx(5.0, abs=1e-9)


class TestSweep:
    def test_monotone_and_shared_table(self):
        f = parse_polynomial("x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1", 2)
        res = bound_sweep(f, Domain.box([(-2, 2), (-2, 2)]), 6)
        vals = [b.value for b in res]
        assert len(vals) == 6
        assert all(vals[i + 1] <= vals[i] + 1e-9 for i in range(len(vals) - 1))

    def test_empty_range(self):
        with pytest.raises(ValueError):
            bound_sweep(parse_polynomial("x1", 1), Domain.cube(1), 1, r_min=2)

    def test_stops_on_conditioning(self):
        # wide 1-D box at high order overruns double precision even after
        # equilibration; the sweep truncates instead of returning noise
        f = parse_polynomial("x1", 1)
        res = bound_sweep(f, Domain.box([(0, 1000)]), 40)
        assert 0 < len(res) < 40
        with pytest.raises(ConditioningError) as exc:
            compute_bound(f, Domain.box([(0, 1000)]), 40)
        assert "reduce r or rescale" in str(exc.value)


def test_dump_matrix_roundtrip():
    M = np.array([[1.0, 0.25], [0.25, 1 / 3]])
    text = dump_matrix(M)
    back = np.array([[float(v) for v in line.split()] for line in text.splitlines()])
    assert np.array_equal(M, back)
