import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evolab.curves import (
    FourierProfile,
    LatitudeIndicatrix,
    build_curve,
    closure_project,
    curve_pairing,
    evolute_curve,
    evolute_profile,
    first_evolute_homothety,
    frenet_diagnostics,
    hypocycloid,
    hypocycloid_closed_form,
    random_profile,
    second_evolute_homothety,
)
from evolab.errors import InvalidParameter, MismatchedIndicatrix, NonSimpleZero

R0 = 1 / np.sqrt(2)


def quad(vals, period):
    return np.mean(vals) * period


def test_closure_project_kills_first_harmonic():
    p = closure_project({1: (1.0, 0.0)}, q=1)
    assert p.coefficients == {}


def test_closure_project_keeps_higher_harmonics():
    p = closure_project({2: (1.0, 0.0)}, q=1)
    assert p.coefficients == {2: (1.0, 0.0)}


def test_closure_project_quadrature_oracle():
    rng = np.random.default_rng(3)
    raw = {j: (rng.normal(), rng.normal()) for j in range(0, 7)}
    p = closure_project(raw, q=1)
    al = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    rho = p.evaluate(al)
    for w in (np.ones_like(al), np.cos(al), np.sin(al)):
        assert abs(quad(rho * w, 2 * np.pi)) < 1e-12


def test_closure_project_respects_windings():
    # with q = 2, frequency 1 in alpha is index 2
    p = closure_project({1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.5, 0.0)}, q=2)
    assert set(p.coefficients) == {1, 3}


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(
        st.integers(min_value=0, max_value=8),
        st.tuples(
            st.floats(-5, 5, allow_nan=False, allow_subnormal=False),
            st.floats(-5, 5, allow_nan=False, allow_subnormal=False),
        ),
        max_size=6,
    ),
    st.integers(min_value=1, max_value=3),
)
def test_closure_project_idempotent_and_valid(coeffs, q):
    p = closure_project(coeffs, q)
    assert p.is_closure_valid()
    again = closure_project(p)
    assert again.coefficients == p.coefficients and again.q == q


def test_profile_has_at_least_four_sign_changes():
    for seed in range(10):
        p = random_profile(np.random.default_rng(seed))
        al = np.linspace(0, 2 * np.pi, 8192, endpoint=False)
        vals = p.evaluate(al)
        changes = np.count_nonzero(np.sign(vals) != np.sign(np.roll(vals, -1)))
        assert changes >= 4


def test_build_matches_hypocycloid_closed_form():
    for r, k in ((0.7, 2), (R0, 2), (0.55, 3)):
        gamma = LatitudeIndicatrix(r)
        prof = FourierProfile({k: (2.0 / r, 0.0)})
        c = build_curve(gamma, prof, 1024)
        cf = hypocycloid_closed_form(r, k, c.alphas)
        cf_aligned = cf - cf[0] + c.points[0]
        np.testing.assert_allclose(c.points, cf_aligned, atol=1e-12)


def test_unit_amplitude_profile_is_half_the_closed_form():
    r, k = 0.6, 3
    full = build_curve(LatitudeIndicatrix(r), FourierProfile({k: (2.0 / r, 0.0)}), 512)
    half = build_curve(LatitudeIndicatrix(r), FourierProfile({k: (1.0 / r, 0.0)}), 512)
    np.testing.assert_allclose(2.0 * half.points, full.points, atol=1e-13)


def test_zero_profile_gives_point_curve():
    c = build_curve(LatitudeIndicatrix(0.5), FourierProfile({}), 64)
    assert np.abs(c.points).max() == 0.0
    assert c.cusp_alphas == ()


def test_build_rejects_open_profiles():
    with pytest.raises(InvalidParameter):
        build_curve(LatitudeIndicatrix(0.5), FourierProfile({1: (1.0, 0.0)}), 64)


def test_cusp_counts():
    assert len(hypocycloid(0.7, 2).cusp_alphas) == 4
    assert len(hypocycloid(0.7, 3).cusp_alphas) == 6
    c = hypocycloid(0.7, "5/2")
    assert len(c.cusp_alphas) == 10
    assert c.indicatrix.q == 2  # indicatrix traversed twice


def test_sigma_flips_exactly_at_cusp_brackets():
    c = hypocycloid(0.7, 3, samples=2048)
    flips = {i for i in range(c.n_samples) if np.sign(c.rho[i]) != np.sign(c.rho[(i + 1) % c.n_samples])}
    assert flips == set(c.cusp_indices)


def test_non_simple_zero_detected():
    # cos(2a) + cos(4a) has double zeros at a = pi/2, 3pi/2
    prof = FourierProfile({2: (1.0, 0.0), 4: (1.0, 0.0)})
    with pytest.raises(NonSimpleZero):
        build_curve(LatitudeIndicatrix(0.6), prof, 512)


def test_hyperboloid_membership():
    for r, k in ((0.7, 3), (R0, 2)):
        c = hypocycloid(r, k, samples=2048)
        x, y, z = c.points.T
        resid = (k**2 - 1) / (4 * r**2) * (x**2 + y**2) - k**2 / (4 * (1 - r**2)) * z**2
        np.testing.assert_allclose(resid, 1.0 / (k**2 - 1), atol=1e-10)


def test_hypocycloid_rejects_bad_parameters():
    with pytest.raises(InvalidParameter):
        hypocycloid(1.5, 3)
    with pytest.raises(InvalidParameter):
        hypocycloid(0.5, 1)
    with pytest.raises(InvalidParameter):
        hypocycloid(0.5, "1/2")


def test_frenet_geodesic_curvature_constant():
    c = build_curve(LatitudeIndicatrix(0.6), random_profile(np.random.default_rng(5)), 2048)
    fr = frenet_diagnostics(c)
    mask = fr.away_from_cusps
    kappa = fr.geodesic[mask]
    ref = np.sqrt(1 - 0.36) / 0.6
    assert fr.geodesic_reference == pytest.approx(ref, abs=1e-12)
    np.testing.assert_allclose(kappa, ref, atol=1e-8)
    # curvature is the reciprocal profile
    np.testing.assert_allclose(fr.curvature[mask], 1.0 / np.abs(c.rho[mask]), atol=1e-12)


def test_dual_arc_length_ratio_is_geodesic_curvature():
    g = LatitudeIndicatrix(0.6)
    al = np.linspace(0, 2 * np.pi, 20000)
    length = lambda pts: np.linalg.norm(np.diff(pts, axis=0), axis=1).sum()
    ratio = length(g.dual().point(al)) / length(g.point(al))
    assert ratio == pytest.approx(g.geodesic_curvature, abs=1e-9)


def test_torsion_changes_sign_at_cusps():
    c = hypocycloid(0.7, 2, samples=2048)
    fr = frenet_diagnostics(c)
    period = c.indicatrix.alpha_period
    for ca in c.cusp_alphas:
        left = np.argmin(np.abs((c.alphas - (ca - 0.1)) % period))
        right = np.argmin(np.abs((c.alphas - (ca + 0.1)) % period))
        assert np.sign(fr.torsion[left]) == -np.sign(fr.torsion[right])


def fd4(pts, h):
    # fourth-order central difference on a periodic grid
    return (
        -np.roll(pts, -2, axis=0)
        + 8 * np.roll(pts, -1, axis=0)
        - 8 * np.roll(pts, 1, axis=0)
        + np.roll(pts, 2, axis=0)
    ) / (12 * h)


def test_evolute_tangents_along_binormal():
    c = build_curve(LatitudeIndicatrix(0.55), random_profile(np.random.default_rng(7)), 4096)
    ev = evolute_curve(c)
    d = fd4(ev.points, c.alphas[1] - c.alphas[0])
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    cross = np.cross(d, c.binormals)
    # away from the evolute's own cusps the differentiated tangent is B
    mask = ev.cusp_mask(0.1)
    assert np.linalg.norm(cross[mask], axis=1).max() < 1e-8


def test_evolute_speed_matches_predicted_profile():
    c = build_curve(LatitudeIndicatrix(0.5), random_profile(np.random.default_rng(9)), 8192)
    ev = evolute_curve(c)
    h = c.alphas[1] - c.alphas[0]
    fd_speed = np.linalg.norm(fd4(ev.points, h), axis=1) / ev.indicatrix.r  # d/ds
    predicted = np.abs(ev.rho)
    np.testing.assert_allclose(fd_speed, predicted, atol=1e-8 * (1 + predicted.max()))


def test_cusps_map_to_regular_points_of_evolute():
    # generic profile: rho and rho + rho_ss do not vanish together
    c = build_curve(LatitudeIndicatrix(0.7), random_profile(np.random.default_rng(21)), 2048)
    ev = evolute_curve(c)
    amp = np.abs(ev.rho).max()
    for ca in c.cusp_alphas:
        assert abs(ev.profile.evaluate(np.array([ca]))[0]) > 1e-3 * amp


def test_evolute_profile_multiplier():
    g = LatitudeIndicatrix(0.6)
    p = FourierProfile({3: (2.0, -1.0)})
    out = evolute_profile(p, g)
    f = 1.0 - 9.0 / (1.0 - 0.36)
    assert out.coefficients == {3: (2.0 * f, -1.0 * f)}


def test_evolute_profile_linear_and_injective():
    g = LatitudeIndicatrix(0.77)
    p1 = random_profile(np.random.default_rng(11))
    p2 = random_profile(np.random.default_rng(12))
    lhs = evolute_profile(p1.scaled(2.0).plus(p2.scaled(-3.0)), g)
    rhs = evolute_profile(p1, g).scaled(2.0).plus(evolute_profile(p2, g).scaled(-3.0))
    assert set(lhs.coefficients) == set(rhs.coefficients)
    for j, ab in lhs.coefficients.items():
        np.testing.assert_allclose(ab, rhs.coefficients[j], rtol=1e-14)
    # multipliers never vanish for closure-valid profiles
    for j in lhs.coefficients:
        assert abs(1.0 - j * j / (1.0 - 0.77**2)) > 1e-6


def test_evolute_two_paths_agree():
    rng = np.random.default_rng(13)
    for seed in range(3):
        r = 0.4 + 0.4 * rng.random()
        g = LatitudeIndicatrix(r)
        p = random_profile(rng)
        geometric = evolute_curve(build_curve(g, p, 2048))
        rebuilt = build_curve(g.dual(), evolute_profile(p, g), 2048)
        d = geometric.points - rebuilt.points
        d = d - d.mean(axis=0)
        assert np.abs(d).max() < 1e-8


def test_curve_pairing_laws():
    rng = np.random.default_rng(15)
    g = LatitudeIndicatrix(0.66)
    c = build_curve(g, random_profile(rng), 2048)
    d = build_curve(g.dual(), random_profile(rng), 2048)
    pq = curve_pairing(c, d)
    qp = curve_pairing(d, c)
    assert abs(pq + qp) < 1e-10 * (1 + abs(pq))
    assert abs(curve_pairing(c.translated(rng.normal(size=3)), d) - pq) < 1e-9
    assert abs(curve_pairing(c, evolute_curve(c))) < 1e-8


def test_curve_pairing_rejects_mismatched_indicatrix():
    g = LatitudeIndicatrix(0.66)
    c = build_curve(g, random_profile(np.random.default_rng(1)), 512)
    d = build_curve(g, random_profile(np.random.default_rng(2)), 512)
    with pytest.raises(MismatchedIndicatrix):
        curve_pairing(c, d)


def test_evolute_of_hypocycloid_is_swapped_scaled_copy():
    # evolute(H(r)) = coeff * diag(1,1,-1) H(sqrt(1-r^2)) up to translation
    r, k = R0, 2
    ev = evolute_curve(hypocycloid(r, k, 2048))
    coeff = first_evolute_homothety(r, k)
    assert coeff == pytest.approx(7.0, abs=1e-12)
    swapped = hypocycloid(np.sqrt(1 - r * r), k, 2048).points @ np.diag([1.0, 1.0, -1.0])
    d = ev.points - coeff * swapped
    d = d - d.mean(axis=0)
    assert np.abs(d).max() < 1e-8


def test_second_evolute_homothety_value():
    assert second_evolute_homothety(R0, 2) == pytest.approx(49.0, abs=1e-9)
    # composing the two first-evolute coefficients gives the second coefficient
    for r, k in ((0.3, 2), (0.8, 4)):
        prod = first_evolute_homothety(r, k) * first_evolute_homothety(np.sqrt(1 - r * r), k)
        assert prod == pytest.approx(second_evolute_homothety(r, k, verify=False), rel=1e-12)


def test_built_curves_close():
    for seed in range(5):
        rng = np.random.default_rng(seed)
        c = build_curve(LatitudeIndicatrix(0.3 + 0.5 * rng.random()), random_profile(rng), 512)
        # endpoint of the exact antiderivative returns to the start
        assert c.diameter() > 0
