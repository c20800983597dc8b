import numpy as np
import pytest

from evolab.errors import AffinelyDegenerate, NoFixedPoint, NoFixedVector
from evolab.evolute import (
    circumcenter,
    double_dual_relabel_matrix,
    evolute_matrix,
    inscribed_kernel,
    involute,
    p_evolute_vertices,
)
from evolab.geometry import (
    SphericalPolygon,
    VertexPolygon,
    dual,
    pv_basis,
    random_side_vector,
    random_spherical_polygon,
    realize,
    side_lengths,
)


def regular_polygon_dirs(n):
    ang = 2 * np.pi * np.arange(n) / n + np.pi / 2 + np.pi / n
    return SphericalPolygon(np.stack([np.cos(ang), np.sin(ang)], axis=-1))


def regular_polygon_verts(n):
    ang = 2 * np.pi * np.arange(n) / n
    return VertexPolygon(np.stack([np.cos(ang), np.sin(ang)], axis=-1))


def test_circumcenter_right_triangle():
    z = circumcenter(np.array([[0.0, 0], [2, 0], [0, 2]]))
    np.testing.assert_allclose(z, [1.0, 1.0], atol=1e-14)


def test_circumcenter_simplex():
    z = circumcenter(np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    np.testing.assert_allclose(z, [0.5, 0.5, 0.5], atol=1e-14)


def test_circumcenter_equidistance_seeded():
    rng = np.random.default_rng(17)
    pts = rng.normal(size=(4, 3))
    z = circumcenter(pts)
    d = np.linalg.norm(pts - z, axis=1)
    assert np.ptp(d) < 1e-10


def test_circumcenter_degenerate():
    with pytest.raises(AffinelyDegenerate):
        circumcenter(np.array([[0.0, 0], [1, 0], [2, 0]]))


def test_evolute_of_inscribed_polygon_is_a_point():
    P = regular_polygon_verts(5)
    Q = p_evolute_vertices(P)
    assert np.abs(Q.verts).max() < 1e-12  # circumcenters all at the center


def test_evolute_sides_orthogonal_to_middle_directions():
    rng = np.random.default_rng(23)
    v = random_spherical_polygon(3, 6, rng)
    P = realize(v, random_side_vector(v, rng))
    Q = p_evolute_vertices(P)
    edges = np.roll(Q.verts, -1, axis=0) - Q.verts
    for k in range(6):
        assert abs(edges[k] @ v.dirs[(k + 1) % 6]) < 1e-10
        assert abs(edges[k] @ v.dirs[(k + 2) % 6]) < 1e-10


def test_second_evolute_sides_parallel_to_original():
    rng = np.random.default_rng(29)
    v = random_spherical_polygon(3, 7, rng)
    P = realize(v, random_side_vector(v, rng))
    S = p_evolute_vertices(p_evolute_vertices(P))
    e_P = np.roll(P.verts, -1, axis=0) - P.verts
    e_S = np.roll(S.verts, -1, axis=0) - S.verts
    for j in range(7):
        # side j of the second evolute is parallel to side j+m of P
        cr = np.cross(e_S[j], e_P[(j + 3) % 7])
        assert np.linalg.norm(cr) < 1e-9 * np.linalg.norm(e_S[j]) * np.linalg.norm(e_P[(j + 3) % 7])


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("offset", [2, 3, 4, 5, 6])
def test_evolute_matrix_rank_pattern(m, offset):
    n = m + offset
    E = evolute_matrix(random_spherical_polygon(m, n, (m, n)))
    expected = n - m if offset % 2 == 0 else n - m - 1
    assert E.rank() == expected


def test_evolute_matrix_agrees_with_geometric_evolute():
    rng = np.random.default_rng(31)
    v = random_spherical_polygon(3, 7, rng)
    E = evolute_matrix(v)
    for _ in range(20):
        x = random_side_vector(v, rng)
        predicted = E.apply(x).x
        Q = p_evolute_vertices(realize(v, x, base=rng.normal(size=3)))
        geometric = side_lengths(E.u, Q).x
        np.testing.assert_allclose(predicted, geometric, atol=1e-9 * (1 + np.abs(geometric).max()))


def test_evolute_matrix_basepoint_independent():
    rng = np.random.default_rng(37)
    v = random_spherical_polygon(2, 6, rng)
    E = evolute_matrix(v)
    x = random_side_vector(v, rng)
    y0 = side_lengths(E.u, p_evolute_vertices(realize(v, x, base=np.zeros(2)))).x
    y1 = side_lengths(E.u, p_evolute_vertices(realize(v, x, base=rng.normal(size=2)))).x
    np.testing.assert_allclose(y0, y1, atol=1e-10)


def test_evolute_is_linear_geometrically():
    rng = np.random.default_rng(41)
    v = random_spherical_polygon(3, 6, rng)
    u = dual(v)
    a, b = 0.7, -1.3
    x1, x2 = random_side_vector(v, rng), random_side_vector(v, rng)
    y1 = side_lengths(u, p_evolute_vertices(realize(v, x1))).x
    y2 = side_lengths(u, p_evolute_vertices(realize(v, x2))).x
    comb = side_lengths(u, p_evolute_vertices(realize(v, a * x1.x + b * x2.x))).x
    np.testing.assert_allclose(comb, a * y1 + b * y2, atol=1e-9 * (1 + np.abs(comb).max()))


def test_evolute_homothety_equivariance():
    rng = np.random.default_rng(43)
    v = random_spherical_polygon(2, 5, rng)
    u = dual(v)
    x = random_side_vector(v, rng)
    y = side_lengths(u, p_evolute_vertices(realize(v, x))).x
    y2 = side_lengths(u, p_evolute_vertices(realize(v, 2.5 * x.x))).x
    np.testing.assert_allclose(y2, 2.5 * y, atol=1e-10 * (1 + np.abs(y2).max()))


def test_inscribed_kernel_regular_pentagon():
    v = regular_polygon_dirs(5)
    k = inscribed_kernel(v)
    # the inscribed polygon with these side directions is the regular one
    np.testing.assert_allclose(k.x, k.x[0], atol=1e-12)


def test_inscribed_kernel_spans_kernel_of_evolute_matrix():
    v = random_spherical_polygon(3, 6, 47)
    k = inscribed_kernel(v)
    E = evolute_matrix(v)
    image = E.M @ E.basis_v.coords(k.x)
    assert np.abs(image).max() < 1e-9
    # both antipodal walks land in the kernel
    image_neg = E.M @ E.basis_v.coords(-k.x)
    assert np.abs(image_neg).max() < 1e-9


def test_inscribed_kernel_unique_up_to_sign():
    from evolab.errors import AmbiguousKernel

    v = random_spherical_polygon(2, 7, 53)
    k = inscribed_kernel(v)  # must not raise AmbiguousKernel
    assert np.linalg.norm(k.x) == pytest.approx(1.0)
    assert k.x[np.argmax(np.abs(k.x) > 1e-12)] > 0


def test_inscribed_kernel_requires_odd_defect():
    with pytest.raises(NoFixedVector):
        inscribed_kernel(random_spherical_polygon(3, 7, 59))


@pytest.mark.parametrize("m,n", [(3, 5), (2, 6), (4, 6)])
def test_involute_roundtrip(m, n):
    rng = np.random.default_rng((m, n, 61))
    v = random_spherical_polygon(m, n, rng)
    P = realize(v, random_side_vector(v, rng), base=rng.normal(size=m))
    Q = p_evolute_vertices(P)
    R = involute(v, Q)
    d = (R.verts - P.verts) - (R.verts - P.verts).mean(axis=0)
    assert np.abs(d).max() < 1e-8
    # and its evolute reproduces Q
    np.testing.assert_allclose(p_evolute_vertices(R).verts, Q.verts, atol=1e-7)


def test_involute_missing_for_odd_defect():
    rng = np.random.default_rng(67)
    v = random_spherical_polygon(3, 6, rng)
    u = dual(v)
    Q = realize(u, random_side_vector(u, rng), base=rng.normal(size=3))
    with pytest.raises(NoFixedPoint):
        involute(v, Q)


def test_involute_translation_equivariant():
    rng = np.random.default_rng(71)
    v = random_spherical_polygon(3, 5, rng)
    Q = p_evolute_vertices(realize(v, random_side_vector(v, rng)))
    c = rng.normal(size=3)
    R0 = involute(v, Q)
    R1 = involute(v, Q.translated(c))
    np.testing.assert_allclose(R1.verts, R0.verts + c, atol=1e-8)


def test_double_dual_relabel_matrix_is_signed_permutation():
    v = random_spherical_polygon(3, 7, 73)
    S = double_dual_relabel_matrix(v)
    np.testing.assert_allclose(np.abs(S) @ np.ones(7), 1.0)
    np.testing.assert_allclose(S.T @ S, np.eye(7), atol=1e-15)
    # it maps closing vectors over dual(dual(v)) to closing vectors over v
    w = dual(dual(v))
    z = random_side_vector(w, 5).x
    x = S @ z
    assert np.linalg.norm(x @ v.dirs) < 1e-12
