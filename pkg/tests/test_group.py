"""Group structure: law, isometric action, conjugation, adjoint norms."""

import math

import numpy as np
import pytest

from hyplab.group import (
    GElem,
    act,
    ad_norm,
    ad_norm_ball_max,
    ad_norm_ball_max_numeric,
    ad_norm_ball_search,
    adjoint,
    conj,
    elem_of,
    identity,
    inv,
    mul,
    point_of,
    right_diff_norm,
)
from hyplab.halfspace import HPoint, distance

RNG_SEED = 52804


def random_elem(rng, n=2):
    return GElem(rng.uniform(-2.0, 2.0, n - 1), math.exp(rng.uniform(-1.5, 1.5)))


# -- oracle: compose the translation/dilation maps and apply to the base point --


def compose_maps_oracle(g: GElem, h: GElem) -> np.ndarray:
    def as_map(e):
        def apply(coords):
            out = e.s * coords
            out[:-1] += e.t
            return out

        return apply

    base = np.zeros(g.n)
    base[-1] = 1.0
    return as_map(g)(as_map(h)(base))


def elems_close(a: GElem, b: GElem, tol=1e-12):
    scale = max(1.0, float(np.max(np.abs(a.t))), a.s)
    return np.max(np.abs(a.t - b.t)) <= tol * scale and abs(a.s - b.s) <= tol * scale


class TestGroupLaw:
    def test_mul_against_map_composition(self):
        g, h = GElem([1.0], 2.0), GElem([3.0], 4.0)
        prod = mul(g, h)
        coords = compose_maps_oracle(g, h)
        assert prod.t[0] == pytest.approx(7.0, abs=1e-15)
        assert prod.s == pytest.approx(8.0, abs=1e-15)
        assert coords[0] == pytest.approx(prod.t[0]) and coords[1] == pytest.approx(prod.s)

    def test_mul_matches_oracle_randomly(self):
        rng = np.random.default_rng(RNG_SEED)
        for n in (2, 4):
            for _ in range(50):
                g, h = random_elem(rng, n), random_elem(rng, n)
                coords = compose_maps_oracle(g, h)
                prod = mul(g, h)
                assert np.allclose(np.append(prod.t, prod.s), coords, rtol=1e-14, atol=1e-14)

    def test_identity_and_inverse(self):
        rng = np.random.default_rng(RNG_SEED + 1)
        e = identity()
        for _ in range(100):
            g = random_elem(rng)
            assert elems_close(mul(e, g), g)
            assert elems_close(mul(g, e), g)
            assert elems_close(mul(g, inv(g)), e, tol=1e-13)
            assert elems_close(mul(inv(g), g), e, tol=1e-13)

    def test_inverse_closed_form(self):
        gi = inv(GElem([3.0], 4.0))
        assert gi.t[0] == pytest.approx(-0.75, abs=1e-15)
        assert gi.s == pytest.approx(0.25, abs=1e-15)

    def test_associativity(self):
        rng = np.random.default_rng(RNG_SEED + 2)
        for _ in range(300):
            a, b, c = (random_elem(rng, 3) for _ in range(3))
            assert elems_close(mul(mul(a, b), c), mul(a, mul(b, c)), tol=1e-12)


class TestAction:
    def test_act_on_base_point_recovers_element(self):
        rng = np.random.default_rng(RNG_SEED + 3)
        for _ in range(20):
            g = random_elem(rng)
            p = act(g, HPoint([0.0], 1.0))
            assert p.x[0] == pytest.approx(g.t[0]) and p.s == pytest.approx(g.s)

    def test_identity_acts_trivially(self):
        p = HPoint([0.7], 2.2)
        q = act(identity(), p)
        assert q.x[0] == p.x[0] and q.s == p.s

    def test_action_is_isometric(self):
        rng = np.random.default_rng(RNG_SEED + 4)
        for _ in range(1000):
            g = random_elem(rng)
            p = HPoint(rng.uniform(-2, 2, 1), math.exp(rng.uniform(-1.5, 1.5)))
            q = HPoint(rng.uniform(-2, 2, 1), math.exp(rng.uniform(-1.5, 1.5)))
            assert abs(distance(act(g, p), act(g, q)) - distance(p, q)) <= 1e-10

    def test_act_equals_mul_through_points(self):
        rng = np.random.default_rng(RNG_SEED + 5)
        for _ in range(50):
            g = random_elem(rng, 3)
            p = HPoint(rng.uniform(-2, 2, 2), math.exp(rng.uniform(-1, 1)))
            via_mul = point_of(mul(g, elem_of(p)))
            direct = act(g, p)
            assert np.allclose(via_mul.coords(), direct.coords(), rtol=1e-14)


class TestConjugation:
    def test_planar_closed_form(self):
        # (x,y)=(1,2), (z,w)=(3,5): conjugation gives (x + yz - wx, w) = (2,5)
        out = conj(GElem([1.0], 2.0), GElem([3.0], 5.0))
        assert out.t[0] == pytest.approx(2.0, abs=1e-14)
        assert out.s == pytest.approx(5.0, abs=1e-14)

    def test_identity_conjugates_trivially(self):
        h = GElem([1.1], 0.4)
        assert elems_close(conj(identity(), h), h)

    def test_general_dimension_closed_form(self):
        rng = np.random.default_rng(RNG_SEED + 6)
        for _ in range(50):
            g, h = random_elem(rng, 4), random_elem(rng, 4)
            out = conj(g, h)
            expect_t = g.t + g.s * h.t - h.s * g.t
            assert np.allclose(out.t, expect_t, rtol=1e-12, atol=1e-13)
            assert out.s == pytest.approx(h.s, rel=1e-13)


def power_iteration_sigma(m: np.ndarray, iters=2000, tol=1e-14, seed=7) -> float:
    """Largest singular value by power iteration on M^T M."""
    rng = np.random.default_rng(seed)
    mtm = m.T @ m
    v = rng.normal(size=m.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(iters):
        w = mtm @ v
        new_lam = float(v @ w)
        v = w / np.linalg.norm(w)
        if abs(new_lam - lam) <= tol * max(1.0, abs(new_lam)):
            lam = new_lam
            break
        lam = new_lam
    return math.sqrt(lam)


class TestAdjoint:
    def test_matrix_form(self):
        g = GElem([3.0], 4.0)
        m = adjoint(g)
        assert np.allclose(m, [[4.0, -3.0], [0.0, 1.0]])
        # applied to (a,b) gives (s a - b t, b)
        a, b = 0.3, -1.2
        out = m @ np.array([a, b])
        assert out[0] == pytest.approx(4.0 * a - b * 3.0)
        assert out[1] == pytest.approx(b)

    def test_identity_matrix(self):
        assert np.array_equal(adjoint(identity(3)), np.eye(3))

    def test_block_form_and_determinant(self):
        rng = np.random.default_rng(RNG_SEED + 7)
        for n in (2, 3, 5):
            g = random_elem(rng, n)
            m = adjoint(g)
            assert np.allclose(m[: n - 1, : n - 1], g.s * np.eye(n - 1))
            assert np.allclose(m[: n - 1, -1], -g.t)
            assert np.allclose(m[-1, : n - 1], 0.0) and m[-1, -1] == 1.0
            assert np.linalg.det(m) == pytest.approx(g.s ** (n - 1), rel=1e-12)

    def test_differential_oracle(self):
        # central finite difference of conjugation along curves through e
        rng = np.random.default_rng(RNG_SEED + 8)
        eps = 1e-5
        for _ in range(30):
            g = random_elem(rng, 3)
            m = adjoint(g)
            x = rng.normal(size=3)
            plus = conj(g, GElem(eps * x[:-1], 1.0 + eps * x[-1]))
            minus = conj(g, GElem(-eps * x[:-1], 1.0 - eps * x[-1]))
            fd = (np.append(plus.t, plus.s) - np.append(minus.t, minus.s)) / (2 * eps)
            assert np.allclose(fd, m @ x, atol=1e-7)

    def test_homomorphism(self):
        rng = np.random.default_rng(RNG_SEED + 9)
        for _ in range(200):
            g, h = random_elem(rng, 3), random_elem(rng, 3)
            lhs = adjoint(mul(g, h))
            rhs = adjoint(g) @ adjoint(h)
            assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(lhs)))


class TestAdNorm:
    def test_vertical_axis_value(self):
        for R in (0.5, 1.0, 2.0):
            assert ad_norm(GElem([0.0], math.exp(R))) == pytest.approx(math.exp(R), rel=1e-14)

    def test_identity_value(self):
        assert ad_norm(identity()) == 1.0

    def test_against_power_iteration_oracle(self):
        # frozen: sigma_max([[4,-3],[0,1]]) = 5.036796290982293
        g = GElem([3.0], 4.0)
        oracle = power_iteration_sigma(adjoint(g))
        assert oracle == pytest.approx(5.036796290982293, abs=1e-10)
        assert ad_norm(g) == pytest.approx(oracle, abs=1e-10)

    def test_random_against_svd(self):
        rng = np.random.default_rng(RNG_SEED + 10)
        for n in (2, 3, 5):
            for _ in range(100):
                g = random_elem(rng, n)
                svd = float(np.linalg.svd(adjoint(g), compute_uv=False)[0])
                assert ad_norm(g) == pytest.approx(svd, rel=1e-12)


class TestRightDiffNorm:
    def test_independent_of_base_point(self):
        rng = np.random.default_rng(RNG_SEED + 11)
        for _ in range(100):
            g = random_elem(rng)
            vals = [right_diff_norm(g, random_elem(rng)) for _ in range(5)]
            ref = right_diff_norm(g, identity())
            for v in vals:
                assert abs(v - ref) <= 1e-12 * ref

    def test_identity_has_unit_norm(self):
        rng = np.random.default_rng(RNG_SEED + 12)
        for _ in range(10):
            assert right_diff_norm(identity(), random_elem(rng)) == pytest.approx(1.0, rel=1e-14)

    def test_equals_adjoint_norm_at_inverse(self):
        # the metric-correct translation norm matches |Ad| at the inverse
        # element, not at g itself; see the finite-difference oracle below
        rng = np.random.default_rng(RNG_SEED + 13)
        for _ in range(1000):
            g = random_elem(rng)
            r = right_diff_norm(g, identity())
            assert abs(r - ad_norm(inv(g))) <= 1e-12 * r

    def test_finite_difference_operator_norm_oracle(self):
        # measure sup |d R_g (X)|_{hg} / |X|_h directly over a dense set of
        # unit directions, pushing curves through right translation
        rng = np.random.default_rng(RNG_SEED + 14)
        eps = 1e-6
        for _ in range(20):
            g, h = random_elem(rng), random_elem(rng)
            best = 0.0
            for phi in np.linspace(0.0, 2.0 * math.pi, 720, endpoint=False):
                x = np.array([math.cos(phi), math.sin(phi)]) * h.s  # unit at h
                hp = GElem(h.t + eps * x[:1], h.s + eps * x[1])
                hm = GElem(h.t - eps * x[:1], h.s - eps * x[1])
                plus, minus = mul(hp, g), mul(hm, g)
                vel = (np.append(plus.t, plus.s) - np.append(minus.t, minus.s)) / (2 * eps)
                best = max(best, float(np.linalg.norm(vel)) / mul(h, g).s)
            assert right_diff_norm(g, h) == pytest.approx(best, rel=1e-5)

    def test_pointwise_mismatch_with_adjoint_norm_exists(self):
        # |Ad| at g and the translation norm genuinely differ pointwise
        g = GElem([0.0], 2.0)
        assert right_diff_norm(g, identity()) == pytest.approx(1.0, rel=1e-14)
        assert ad_norm(g) == pytest.approx(2.0, rel=1e-14)


class TestTranslationLemmas:
    def test_translation_distance_bounds(self):
        rng = np.random.default_rng(RNG_SEED + 15)
        for _ in range(1000):
            a, b, g = (random_elem(rng) for _ in range(3))
            dab = distance(point_of(a), point_of(b))
            dag = distance(point_of(mul(a, g)), point_of(mul(b, g)))
            rg = right_diff_norm(g, identity())
            rginv = right_diff_norm(inv(g), identity())
            assert dag <= rg * dab + 1e-10
            assert dab <= rginv * dag + 1e-10

    def test_ball_symmetry(self):
        rng = np.random.default_rng(RNG_SEED + 16)
        e = HPoint([0.0], 1.0)
        for _ in range(1000):
            g = random_elem(rng)
            assert abs(distance(e, point_of(g)) - distance(e, point_of(inv(g)))) <= 1e-10


class TestBallMax:
    def test_zero_radius(self):
        assert ad_norm_ball_max(0.0) == 1.0
        assert ad_norm_ball_max_numeric(0.0) == 1.0

    def test_closed_form_values(self):
        assert ad_norm_ball_max(1.0) == pytest.approx(math.e, rel=1e-15)
        for R in (0.5, 2.0, 5.0):
            assert ad_norm_ball_max(R) == pytest.approx(math.cosh(R) + math.sinh(R), rel=1e-15)

    def test_grid_search_converges_to_closed_form(self):
        val = ad_norm_ball_max_numeric(2.0, n_shells=100, n_angles=10000)
        expected = math.exp(2.0)
        assert abs(val - expected) <= 1e-6 * expected
        assert val <= expected + 1e-9

    def test_grid_search_maximizer_at_top(self):
        val, pt = ad_norm_ball_search(2.0, n_shells=100, n_angles=10000)
        assert math.hypot(pt.x[0] - 0.0, pt.s - math.exp(2.0)) <= 1e-2

    def test_interior_strictly_below_boundary(self):
        # strong maximum principle on the ball of radius 2
        val_int, _ = ad_norm_ball_search(2.0 * 0.99, n_shells=99, n_angles=4000)
        val_bd = ad_norm_ball_max(2.0)
        assert val_int < val_bd

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            ad_norm_ball_max(-1.0)
