import math

import numpy as np
import pytest

from chpolar import angeom, kahler
from chpolar.angeom import (
    ANVector,
    OrbitModel,
    an_bracket,
    complex_structure,
    conjugate_subalgebra,
    curvature,
    holomorphic_sectional_curvature,
    inner_product,
    isotropy_at,
    levi_civita,
    mean_curvature,
    mean_curvature_closed_form,
    norm,
    sectional_curvature,
    shape_operator,
)
from chpolar.su1n import bracket, build_root_decomposition


def rand_vec(n, rng):
    return ANVector(
        rng.standard_normal(),
        rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1),
        rng.standard_normal(),
    )


def to_matrix(rd, v):
    return v.a * rd.B + rd.galpha_matrix(v.u) + v.x * rd.Z


# --- connection -----------------------------------------------------------------


def test_connection_B_B_vanishes():
    n = 3
    B = ANVector.basis_B(n)
    assert norm(levi_civita(B, B)) == 0.0


def test_connection_Z_Z_is_B():
    n = 3
    Z = ANVector.basis_Z(n)
    out = levi_civita(Z, Z)
    assert out.a == pytest.approx(1.0) and norm(out - ANVector.basis_B(n)) < 1e-14


def test_connection_U_U():
    n = 4
    u = np.array([1.0 + 2.0j, 0.5j, -1.0])
    U = ANVector.from_galpha(u)
    out = levi_civita(U, U)
    assert out.a == pytest.approx(0.5 * inner_product(U, U))
    assert np.abs(out.u).max() < 1e-14 and out.x == 0.0


def test_torsion_free():
    rng = np.random.default_rng(0)
    for _ in range(50):
        X, Y = rand_vec(3, rng), rand_vec(3, rng)
        t = levi_civita(X, Y) - levi_civita(Y, X) - an_bracket(X, Y)
        assert norm(t) < 1e-10


def test_metric_compatibility():
    rng = np.random.default_rng(1)
    for _ in range(50):
        X, Y, W = (rand_vec(3, rng) for _ in range(3))
        resid = inner_product(levi_civita(X, Y), W) + inner_product(Y, levi_civita(X, W))
        assert abs(resid) < 1e-10 * max(1.0, norm(X) * norm(Y) * norm(W))


def test_an_bracket_matches_ambient_commutator():
    rd = build_root_decomposition(3)
    rng = np.random.default_rng(2)
    for _ in range(20):
        X, Y = rand_vec(3, rng), rand_vec(3, rng)
        lhs = to_matrix(rd, an_bracket(X, Y))
        rhs = bracket(to_matrix(rd, X), to_matrix(rd, Y))
        assert (lhs - rhs).norm() < 1e-10


# --- curvature -----------------------------------------------------------------


def test_sectional_curvature_of_B_Z_plane():
    n = 3
    B, Z = ANVector.basis_B(n), ANVector.basis_Z(n)
    assert sectional_curvature(B, Z) == pytest.approx(-1.0, abs=1e-12)


def test_curvature_antisymmetry():
    rng = np.random.default_rng(3)
    X, Y, Z, W = (rand_vec(3, rng) for _ in range(4))
    assert curvature(X, Y, Z, W) == pytest.approx(-curvature(Y, X, Z, W), abs=1e-9)


def test_holomorphic_sectional_curvature_is_minus_one():
    rng = np.random.default_rng(4)
    for n in (2, 3, 4):
        for _ in range(30):
            X = rand_vec(n, rng)
            assert holomorphic_sectional_curvature(X) == pytest.approx(-1.0, abs=1e-7)


def test_complex_structure_squares_to_minus_one():
    rng = np.random.default_rng(5)
    X = rand_vec(3, rng)
    assert norm(complex_structure(complex_structure(X)) + X) < 1e-14


# --- orbits and shape operators ---------------------------------------------------


def line_orbit(n=3, a=1.0, m=1):
    # tangent R(aB + X) + w + g_2a with X = e1, w = span{e2, ...}
    x_vec = np.zeros(n - 1, dtype=complex)
    x_vec[0] = 1.0
    eye = np.eye(n - 1, dtype=complex)
    w = [eye[1 + j] for j in range(m)]
    return OrbitModel.from_line(n, a, x_vec, w)


def test_orbit_requires_orthogonal_X():
    with pytest.raises(ValueError):
        OrbitModel.from_line(3, 1.0, np.array([1.0, 0]), [np.array([1.0, 0])])


def test_orbit_tangent_is_subalgebra():
    orb = line_orbit(4, a=0.7, m=2)
    assert len(orb.tangent) == 1 + 2 + 1
    assert len(orb.normal) == 2 * 4 - 4


def test_shape_operator_leading_direction():
    # S_xi(aB + X) = (|X| / (2 sqrt(a^2 + |X|^2))) (aB + X) for the unit
    # normal xi along |X|^2 B - a X
    n, a = 3, 1.3
    orb = line_orbit(n, a=a, m=1)
    xsq = 1.0
    xi = ANVector(xsq, -a * orb.x_vec, 0.0)
    xi = (1.0 / norm(xi)) * xi
    S = shape_operator(orb, xi)
    lead = orb.tangent[0]
    expect = math.sqrt(xsq) / (2 * math.sqrt(a * a + xsq))
    col = S[:, 0]
    assert col[0] == pytest.approx(expect, abs=1e-12)
    assert np.abs(col[1:]).max() < 1e-12


def test_shape_operator_trace_for_galpha_normals_vanishes():
    n = 4
    orb = line_orbit(n, a=0.9, m=1)
    # normals inside g_a minus (w + R X)
    for eta in orb.normal:
        if abs(eta.a) < 1e-12 and abs(eta.x) < 1e-12:
            S = shape_operator(orb, eta)
            assert abs(np.trace(S)) < 1e-10


def test_shape_operator_self_adjoint_and_input_validation():
    orb = line_orbit(3, a=1.0, m=1)
    with pytest.raises(ValueError):
        shape_operator(orb, orb.tangent[0])  # tangent, not normal
    with pytest.raises(ValueError):
        shape_operator(orb, 2.0 * orb.normal[0])  # not unit
    S = shape_operator(orb, orb.normal[0])
    assert np.abs(S - S.T).max() < 1e-9


def test_totally_geodesic_case_has_zero_shape_trace():
    # h = a + g_2a: minimal (0 mean curvature) per the b = a case
    orb = OrbitModel.from_flag(3, "full", [])
    H = mean_curvature(orb)
    assert norm(H) < 1e-12


# --- mean curvature -----------------------------------------------------------------


def test_mean_curvature_b_equals_a_vanishes():
    for m in (0, 1, 2):
        eye = np.eye(3, dtype=complex)
        orb = OrbitModel.from_flag(4, "full", [eye[j] for j in range(m)])
        assert norm(mean_curvature(orb)) < 1e-10
        assert norm(mean_curvature_closed_form(orb)) == 0.0


def test_mean_curvature_b_zero_formula():
    for m in (0, 1, 2):
        eye = np.eye(3, dtype=complex)
        orb = OrbitModel.from_flag(4, "zero", [eye[j] for j in range(m)])
        H = mean_curvature(orb)
        want = ANVector(0.5 * (2 + m), np.zeros(3, dtype=complex), 0.0)
        assert norm(H - want) < 1e-10
        assert norm(mean_curvature_closed_form(orb) - want) == 0.0


def test_mean_curvature_generic_line_case():
    # a = 1, |X| = 1, dim w = m: H = ((3 + m)/4)(B - X)
    n = 4
    for m in (0, 1, 2):
        orb = line_orbit(n, a=1.0, m=m)
        H = mean_curvature(orb)
        want = ANVector((3 + m) / 4.0, -(3 + m) / 4.0 * orb.x_vec, 0.0)
        assert norm(H - want) < 1e-9
        assert norm(mean_curvature_closed_form(orb) - want) < 1e-12


def test_mean_curvature_trace_matches_closed_form_randomized():
    rng = np.random.default_rng(6)
    for _ in range(100):
        n = int(rng.integers(2, 5))
        a = float(rng.standard_normal())
        x_vec = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        if abs(a) < 1e-3 and np.linalg.norm(x_vec) < 1e-3:
            a = 1.0
        # w orthogonal to X: complete X to an orthonormal set and drop it
        rows = [x_vec] + [
            rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
            for _ in range(int(rng.integers(0, n - 1)))
        ]
        sub = kahler.RealSubspace(n - 1, rows)
        w = [b for b in sub.basis[1:]]
        orb = OrbitModel.from_line(n, a, sub.basis[0] * np.linalg.norm(x_vec), w)
        diff = mean_curvature(orb) - mean_curvature_closed_form(orb)
        assert norm(diff) < 1e-9


def test_unsupported_shape_raises():
    with pytest.raises(ValueError):
        OrbitModel.from_flag(3, "half", [])
    with pytest.raises(ValueError):
        OrbitModel.from_line(3, 0.0, np.zeros(2, dtype=complex), [])


# --- isotropy ------------------------------------------------------------------------


def isotropy_dim_oracle(rd, q_mats, xi_mat):
    """Independent route: dim(span q cap ker ad(xi)) from the rank identity
    dim(A cap B) = dim A + dim B - dim(A + B)."""
    from chpolar.su1n import ad

    A = np.array([rd.coords(T) for T in q_mats])
    sA = np.linalg.svd(A, compute_uv=False)
    dim_a = int(np.sum(sA > 1e-9 * max(1.0, sA[0])))
    M = ad(xi_mat)
    u, s, vh = np.linalg.svd(M)
    rank = int(np.sum(s > 1e-9 * max(1.0, s[0])))
    Bn = vh[rank:]
    dim_b = Bn.shape[0]
    stack = np.vstack([A, Bn])
    sS = np.linalg.svd(stack, compute_uv=False)
    dim_sum = int(np.sum(sS > 1e-9 * max(1.0, sS[0])))
    return dim_a + dim_b - dim_sum


def test_isotropy_full_q_at_zero():
    rd = build_root_decomposition(3)
    q = [rd.k0_matrix(N) for N in kahler.skew_hermitian_basis(2)]
    out = isotropy_at(rd, q, np.zeros(2, dtype=complex))
    assert len(out) == 4


def test_isotropy_standard_vector():
    for n in (3, 4):
        rd = build_root_decomposition(n)
        q = [rd.k0_matrix(N) for N in kahler.skew_hermitian_basis(n - 1)]
        e1 = np.zeros(n - 1, dtype=complex)
        e1[0] = 1.0
        out = isotropy_at(rd, q, e1)
        assert len(out) == (n - 2) ** 2
        for T in out:
            assert bracket(T, rd.galpha_matrix(e1)).norm() < 1e-9


def test_isotropy_center_acts_freely():
    rd = build_root_decomposition(3)
    centre = rd.k0_matrix(1j * np.eye(2))
    out = isotropy_at(rd, [centre], np.array([1.0 + 0j, 0.0]))
    assert out == []


def test_isotropy_matches_oracle_on_random_pairs():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(2, 5))
        rd = build_root_decomposition(n)
        gens = kahler.skew_hermitian_basis(n - 1)
        size = int(rng.integers(1, len(gens) + 1))
        picks = rng.choice(len(gens), size=size, replace=False)
        q = [rd.k0_matrix(gens[i]) for i in picks]
        xi_vec = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        xi = rd.galpha_matrix(xi_vec)
        got = len(isotropy_at(rd, q, xi))
        want = isotropy_dim_oracle(rd, q, xi)
        assert got == want


# --- conjugation ----------------------------------------------------------------------


def test_conjugate_by_identity_fixes_subalgebra():
    rd = build_root_decomposition(3)
    h = [rd.B, rd.Z]
    out = conjugate_subalgebra(rd, h, ANVector(0.0, np.zeros(2, dtype=complex), 0.0))
    before = np.array([rd.coords(x) for x in h])
    u, s, vh = np.linalg.svd(before)
    span = vh[:2]
    for el in out:
        v = rd.coords(el)
        assert np.linalg.norm(v - span.T @ (span @ v)) < 1e-10


def test_w_plus_center_is_AN_invariant():
    rd = build_root_decomposition(3)
    h = [rd.galpha_matrix(np.array([0, 1.0 + 0j])), rd.Z]
    rng = np.random.default_rng(9)
    g_exp = rand_vec(3, rng)
    out = conjugate_subalgebra(rd, h, g_exp)
    before = np.array([rd.coords(x) for x in h])
    u, s, vh = np.linalg.svd(before)
    span = vh[:2]
    for el in out:
        v = rd.coords(el)
        assert np.linalg.norm(v - span.T @ (span @ v)) < 1e-9


def test_conjugating_a_w_g2a_tilts_the_line():
    # h = a + w + g_2a moved by exp(X0) with X0 orthogonal to w: the a + n
    # projection becomes R(B + X') + w + g_2a with X' in g_a minus w.
    rd = build_root_decomposition(3)
    w_vec = np.array([0, 1.0 + 0j])
    x0 = np.array([1.0 + 0j, 0])  # orthogonal to w
    h = [rd.B, rd.galpha_matrix(w_vec), rd.Z]
    out = conjugate_subalgebra(rd, h, ANVector.from_galpha(x0))
    # direct expansion oracle: Ad(exp X0) B = B - X0/2 exactly (nilpotency)
    want_lead = rd.B - 0.5 * rd.galpha_matrix(x0)
    rows = np.array([rd.coords(el) for el in out])
    u, s, vh = np.linalg.svd(rows)
    span = vh[:3]
    for target in (want_lead, rd.galpha_matrix(w_vec), rd.Z):
        v = rd.coords(target)
        assert np.linalg.norm(v - span.T @ (span @ v)) < 1e-9 * max(1.0, np.linalg.norm(v))


def test_json_roundtrip():
    v = ANVector(0.5, np.array([1.0 - 2.0j]), -0.25)
    w = ANVector.from_json(v.to_json())
    assert norm(v - w) < 1e-15
