import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evolab.errors import NonGeneric
from evolab.geometry import (
    SideVector,
    SphericalPolygon,
    double_dual_shift_signs,
    dual,
    is_generic,
    pv_basis,
    random_side_vector,
    random_spherical_polygon,
    realize,
    side_lengths,
    signature,
)

SQUARE = SphericalPolygon(np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float))


def det3(a, b, c):
    # independent 3x3 determinant, written out
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def test_signature_square():
    sig = signature(SQUARE)
    assert np.all(np.abs(sig.dets) == pytest.approx(1.0))
    assert np.all(np.abs(sig.signs) == 1)


def test_signature_rejects_repeated_direction():
    dirs = np.array([[1, 0], [1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
    with pytest.raises(NonGeneric):
        signature(SphericalPolygon(dirs))


def test_signature_matches_written_out_determinant():
    v = random_spherical_polygon(3, 7, 11)
    sig = signature(v)
    for j in range(7):
        d = det3(v.dirs[j], v.dirs[(j + 1) % 7], v.dirs[(j + 2) % 7])
        assert sig.dets[j] == pytest.approx(d, abs=1e-14)
        assert sig.signs[j] == np.sign(d)


def test_dual_in_plane_is_rotation_of_next_direction():
    u = dual(SQUARE)
    for j in range(4):
        nxt = SQUARE.dirs[(j + 1) % 4]
        assert abs(u.dirs[j] @ nxt) < 1e-15
        assert np.linalg.norm(u.dirs[j]) == pytest.approx(1.0)


def test_dual_orthogonal_to_its_window():
    v = random_spherical_polygon(3, 7, 5)
    u = dual(v)
    for j in range(7):
        assert abs(u.dirs[j] @ v.dirs[(j + 1) % 7]) < 1e-12
        assert abs(u.dirs[j] @ v.dirs[(j + 2) % 7]) < 1e-12


def test_dual_positivity_conditions():
    for m, n, seed in [(2, 6, 0), (3, 7, 1), (4, 8, 2)]:
        v = random_spherical_polygon(m, n, seed)
        u = dual(v)
        s = signature(v).signs
        for j in range(n):
            assert np.sign(u.dirs[j] @ v.dirs[(j + m) % n]) == s[(j + 1) % n]
            assert np.sign(u.dirs[j] @ v.dirs[j]) == (-1) ** (m - 1) * s[j]


@pytest.mark.parametrize("m,n", [(2, 5), (2, 8), (3, 5), (3, 9), (4, 6), (4, 9)])
def test_double_dual_is_signed_shift(m, n):
    v = random_spherical_polygon(m, n, 31 * m + n)
    w = dual(dual(v))
    eps = double_dual_shift_signs(v)
    for j in range(n):
        np.testing.assert_allclose(w.dirs[j], eps[j] * v.dirs[(j + m) % n], atol=1e-10)


@pytest.mark.parametrize("m,n", [(2, 5), (3, 6), (4, 7)])
def test_dual_signature_is_window_product(m, n):
    v = random_spherical_polygon(m, n, 7 * m + n)
    s = signature(v).signs
    sstar = signature(dual(v)).signs
    for a in range(n):
        prod = np.prod([s[(a + i) % n] for i in range(1, m)])
        assert sstar[a] == prod


def test_dual_of_generic_is_generic_ensemble():
    configs = [(2, n) for n in range(5, 10)] + [(3, n) for n in range(5, 10)] + [(4, n) for n in range(6, 10)]
    for m, n in configs:
        for i in range(100):
            v = random_spherical_polygon(m, n, (m, n, i))
            assert is_generic(dual(v))


def test_pv_basis_square_contains_unit_side_vector():
    B = pv_basis(SQUARE)
    assert B.dim == 2
    x = np.full(4, 0.5)
    # x closes up, so it lies in the span of the basis
    np.testing.assert_allclose(B.columns @ (B.columns.T @ x), x, atol=1e-14)


def test_pv_basis_dimension_and_closure():
    v = random_spherical_polygon(3, 5, 9)
    B = pv_basis(v)
    assert B.dim == 2
    # oracle: scipy's null space of the direction matrix has the same span
    from scipy.linalg import null_space

    N = null_space(v.dirs.T)
    assert N.shape == (5, 2)
    proj = N @ (N.T @ B.columns)
    np.testing.assert_allclose(proj, B.columns, atol=1e-12)
    for k in range(B.dim):
        P = realize(v, B.columns[:, k])
        gap = P.verts[-1] + B.columns[-1, k] * v.dirs[-1] - P.verts[0]
        assert np.linalg.norm(gap) < 1e-12


def test_realize_zero_gives_point_polygon():
    v = random_spherical_polygon(3, 6, 1)
    P = realize(v, np.zeros(6), base=np.array([1.0, 2.0, 3.0]))
    assert np.abs(P.verts - np.array([1.0, 2.0, 3.0])).max() == 0.0


def test_realize_unit_square():
    P = realize(SQUARE, np.ones(4))
    np.testing.assert_allclose(P.verts, [[0, 0], [1, 0], [1, 1], [0, 1]], atol=1e-15)
    x = side_lengths(SQUARE, P)
    np.testing.assert_allclose(x.x, 1.0)


def test_point_polygon_side_lengths_are_zero():
    v = random_spherical_polygon(2, 5, 2)
    P = realize(v, np.zeros(5))
    assert np.all(side_lengths(v, P).x == 0.0)


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from([(2, 5), (2, 7), (3, 5), (3, 8), (4, 7)]),
    st.integers(min_value=0, max_value=10**6),
)
def test_realize_side_lengths_roundtrip(mn, seed):
    m, n = mn
    rng = np.random.default_rng(seed)
    v = random_spherical_polygon(m, n, rng)
    x = random_side_vector(v, rng)
    base = rng.normal(size=m)
    P = realize(v, x, base=base)
    x2 = side_lengths(v, P)
    np.testing.assert_allclose(x2.x, x.x, atol=1e-10)
    P2 = realize(v, x2, base=base)
    np.testing.assert_allclose(P2.verts, P.verts, atol=1e-12)


def test_side_vector_requires_closure():
    v = random_spherical_polygon(2, 5, 3)
    from evolab.errors import ClosureViolation

    with pytest.raises(ClosureViolation):
        SideVector(v, np.ones(5))
