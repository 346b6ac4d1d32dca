import math

import numpy as np
import pytest

from chpolar import kahler, polar
from chpolar.kahler import RealSubspace
from chpolar.polar import (
    PolarActionSpec,
    build_action,
    build_family_I,
    build_family_II,
    check_polarity,
    enumerate_moduli,
    normalizer_section,
    orbit_equivalence_invariants,
    regular_vectors,
)
from chpolar.su1n import build_root_decomposition, theta


def canonical_family_II(n, b_flag, moduli):
    w = kahler.canonical_subspace(n - 1, moduli)
    return PolarActionSpec(
        n=n, family="II", b_flag=b_flag, w=w,
        q_basis=kahler.normalizer_algebra(w), q_section=normalizer_section(w),
    )


def family_I_spec(n, k, q_kind):
    m = n - k
    eye = np.eye(m, dtype=complex) if m else np.zeros((0, 0))
    if q_kind == "none":
        return PolarActionSpec(n=n, family="I", k=k)
    if q_kind == "full":
        return PolarActionSpec(
            n=n, family="I", k=k,
            q_basis=kahler.skew_hermitian_basis(m),
            q_section=RealSubspace(m, [eye[0]]),
        )
    torus = []
    for j in range(m):
        E = np.zeros((m, m), dtype=complex)
        E[j, j] = 1j
        torus.append(E)
    return PolarActionSpec(
        n=n, family="I", k=k, q_basis=torus, q_section=RealSubspace(m, list(eye)),
    )


# --- builders ---------------------------------------------------------------------


def test_build_family_II_shapes():
    # b = a, w = 0, q = k_0, s = one line: h has dim (n-1)^2 + 2, section is a line
    n = 3
    rd = build_root_decomposition(n)
    q = kahler.skew_hermitian_basis(n - 1)
    s = normalizer_section(RealSubspace.zero(n - 1))
    h, sigma = build_family_II(rd, "full", RealSubspace.zero(n - 1), q, s)
    assert len(h) == (n - 1) ** 2 + 2
    assert len(sigma) == 1


def test_build_family_II_horosphere():
    n = 3
    rd = build_root_decomposition(n)
    h, sigma = build_family_II(rd, "zero", RealSubspace.full(n - 1), [], None)
    # h = n (the Heisenberg algebra), section tangent = a
    assert len(h) == 2 * (n - 1) + 1
    assert len(sigma) == 1 and (sigma[0] - rd.B).norm() < 1e-12


def test_build_family_II_rejects_non_normalizing_q():
    n = 3
    w = RealSubspace(n - 1, [np.array([1.0 + 0j, 0.0])])
    bad = np.zeros((2, 2), dtype=complex)
    bad[0, 1], bad[1, 0] = 1.0, -1.0  # rotates e1 out of w... e1 -> -e2
    with pytest.raises(ValueError, match="normalize"):
        build_family_II(n, "full", w, [bad], RealSubspace.zero(n - 1))


def test_non_totally_real_section_claim_fails_at_check_time():
    # a complex line claimed as section: builder passes it through, the
    # criterion rejects it via the bracket condition
    n = 3
    s = RealSubspace(n - 1, [np.array([1.0 + 0j, 0]), np.array([1j, 0])])
    h, sigma = build_family_II(n, "full", RealSubspace.zero(n - 1), [], s)
    report = check_polarity(n, h, sigma)
    assert not report.verdict and not report.bracket_condition


def test_section_meeting_w_fails_at_check_time():
    n = 3
    w = RealSubspace(n - 1, [np.array([1.0 + 0j, 0])])
    s = RealSubspace(n - 1, [np.array([1.0 + 0j, 0])])
    h, sigma = build_family_II(n, "full", w, [], s)
    report = check_polarity(n, h, sigma)
    assert not report.verdict and not report.section_in_normal


def test_build_family_I_shapes():
    n = 3
    rd = build_root_decomposition(n)
    h, sigma = build_family_I(rd, n, [], None)
    assert len(h) == n * (n + 1) // 2  # dim so(1, n)
    assert len(sigma) == 1
    h0, sigma0 = build_family_I(rd, 0, kahler.skew_hermitian_basis(n), RealSubspace(n, [np.eye(n, dtype=complex)[0]]))
    assert len(h0) == n * n
    assert len(sigma0) == 1


def test_build_family_I_rejects_non_subalgebra():
    n = 3
    E = np.zeros((2, 2), dtype=complex)
    E[0, 1], E[1, 0] = 1.0, -1.0
    F = np.zeros((2, 2), dtype=complex)
    F[0, 1], F[1, 0] = 1j, 1j
    with pytest.raises(ValueError, match="closed"):
        build_family_I(n, 1, [E, F], None)  # [E, F] leaves span{E, F}


# --- polarity criterion ------------------------------------------------------------


POLAR_CATALOG = [
    ("II b=a w=0 n=2", lambda: canonical_family_II(2, "full", [])),
    ("II b=0 w=0 n=2", lambda: canonical_family_II(2, "zero", [])),
    ("II b=a w=R n=2", lambda: canonical_family_II(2, "full", [(math.pi / 2, 1)])),
    ("II b=0 w=C n=2 horosphere", lambda: canonical_family_II(2, "zero", [(0.0, 2)])),
    ("I k=2 n=2", lambda: family_I_spec(2, 2, "none")),
    ("I k=0 u(2) n=2", lambda: family_I_spec(2, 0, "full")),
    ("II b=a w=pi/3 n=3", lambda: canonical_family_II(3, "full", [(math.pi / 3, 2)])),
    ("II b=0 w=pi/3 n=3", lambda: canonical_family_II(3, "zero", [(math.pi / 3, 2)])),
    ("II b=a w=R^2 n=3", lambda: canonical_family_II(3, "full", [(math.pi / 2, 2)])),
    ("I k=1 u(2) n=3", lambda: family_I_spec(3, 1, "full")),
    ("I k=1 torus n=3", lambda: family_I_spec(3, 1, "torus")),
    ("II b=a w={0,pi/2} n=4", lambda: canonical_family_II(4, "full", [(0.0, 2), (math.pi / 2, 1)])),
    ("II b=0 w={pi/3,pi/2} n=4", lambda: canonical_family_II(4, "zero", [(math.pi / 3, 2), (math.pi / 2, 1)])),
    ("I k=3 u(1) n=4", lambda: family_I_spec(4, 3, "full")),
    ("II b=a w={0,pi/3,pi/2} n=5", lambda: canonical_family_II(5, "full", [(0.0, 2), (math.pi / 3, 2), (math.pi / 2, 1)])),
]


@pytest.mark.parametrize("label,factory", POLAR_CATALOG, ids=[c[0] for c in POLAR_CATALOG])
def test_constructed_examples_are_polar(label, factory):
    spec = factory()
    rd, h, sigma = build_action(spec)
    report = check_polarity(rd, h, sigma, seed=5)
    assert report.verdict, report.to_json()
    assert report.bracket_residual < 1e-9


def test_crafted_negative_fails_robustly():
    n = 3
    rd = build_root_decomposition(n)
    h = [rd.B, rd.Z]
    sigma = [E - theta(E) for E in rd.block("g_a")]
    report = check_polarity(rd, h, sigma, seed=1)
    assert not report.verdict
    assert not report.bracket_condition
    assert report.bracket_residual >= 0.1


def test_transitive_action_reported_vacuously_polar():
    n = 2
    spec = canonical_family_II(n, "full", [(0.0, 2)])  # full parabolic: w = g_a
    rd, h, sigma = build_action(spec)
    report = check_polarity(rd, h, sigma)
    assert report.transitive and report.cohomogeneity == 0
    assert report.verdict


def test_cohomogeneities_in_catalog():
    spec = canonical_family_II(3, "full", [(math.pi / 3, 2)])
    rd, h, sigma = build_action(spec)
    assert check_polarity(rd, h, sigma).cohomogeneity == 1
    spec2 = family_I_spec(3, 1, "torus")
    rd, h, sigma = build_action(spec2)
    assert check_polarity(rd, h, sigma).cohomogeneity == 3  # iB line + R^2


# --- regular vectors ------------------------------------------------------------------


def test_regular_vectors_full_k0():
    n = 3
    q = kahler.skew_hermitian_basis(n - 1)
    w = RealSubspace.zero(n - 1)
    s = RealSubspace(n - 1, [np.eye(n - 1, dtype=complex)[0]])
    out = regular_vectors(q, w, s, samples=50, seed=2)
    assert len(out) == 50
    assert all(flag for _, flag in out)


def test_regular_vectors_trivial_q_rank_zero_case():
    # q = 0: regular iff the target dimension is zero, i.e. w + s fills g_a
    m = 2
    w = RealSubspace(m, [np.array([0, 1.0 + 0j]), np.array([0, 1j])])
    s_small = RealSubspace(m, [np.array([1.0 + 0j, 0])])
    out = regular_vectors([], w, s_small, samples=5, seed=3)
    assert all(not flag for _, flag in out)  # target dim 1, rank 0
    s_full = RealSubspace(m, [np.array([1.0 + 0j, 0]), np.array([1j, 0])])
    # s_full is not totally real, but regular_vectors only needs s orthogonal to w
    out2 = regular_vectors([], w, s_full, samples=5, seed=3)
    assert all(flag for _, flag in out2)  # target dim 0


def test_regular_vectors_density_after_polarity():
    spec = canonical_family_II(3, "full", [(math.pi / 3, 2)])
    out = regular_vectors(spec.q_basis, spec.w, spec.q_section, samples=100, seed=4)
    assert sum(flag for _, flag in out) >= 99


# --- orbit equivalence ------------------------------------------------------------------


def test_equivalence_reflexive():
    spec = canonical_family_II(3, "full", [(math.pi / 3, 2)])
    ans, report = orbit_equivalence_invariants(spec, spec)
    assert ans == "yes"


def test_equivalence_family_mismatch():
    a = family_I_spec(3, 1, "full")
    b = canonical_family_II(3, "full", [])
    ans, _ = orbit_equivalence_invariants(a, b)
    assert ans == "no"
    ans2, _ = orbit_equivalence_invariants(b, a)
    assert ans2 == "no"


def test_equivalence_b_flag_mismatch():
    a = canonical_family_II(3, "full", [(math.pi / 2, 1)])
    b = canonical_family_II(3, "zero", [(math.pi / 2, 1)])
    ans, report = orbit_equivalence_invariants(a, b)
    assert ans == "no" and "b-flag" in report["reason"]


def test_equivalence_angle_moduli_mismatch():
    a = canonical_family_II(3, "full", [(math.pi / 3, 2)])
    b = canonical_family_II(3, "full", [(math.pi / 4, 2)])
    ans, report = orbit_equivalence_invariants(a, b)
    assert ans == "no" and "moduli" in report["reason"]


def test_equivalence_congruent_translates():
    # same moduli, w presented in different unitary positions: must be 'yes'
    rng = np.random.default_rng(12)
    moduli = [(math.pi / 3, 2)]
    w1 = kahler.canonical_subspace(2, moduli)
    A = kahler.haar_unitary(2, rng)
    w2 = RealSubspace(2, [A @ b for b in w1.basis])
    mk = lambda w: PolarActionSpec(
        n=3, family="II", b_flag="full", w=w,
        q_basis=kahler.normalizer_algebra(w), q_section=normalizer_section(w),
    )
    ans, report = orbit_equivalence_invariants(mk(w1), mk(w2))
    assert ans == "yes"
    assert report["witness_unitarity"] < 1e-9


def test_equivalence_symmetric_and_k_separates():
    a = family_I_spec(3, 1, "full")
    b = family_I_spec(3, 3, "none")
    assert orbit_equivalence_invariants(a, b)[0] == "no"
    assert orbit_equivalence_invariants(b, a)[0] == "no"


def test_equivalence_orbit_dimension_separates_q():
    a = family_I_spec(3, 1, "full")   # u(2): principal orbit S^3
    b = family_I_spec(3, 1, "torus")  # T^2: principal orbit T^2
    ans, report = orbit_equivalence_invariants(a, b)
    assert ans == "no"
    assert report["principal_orbit_dims"] == (3, 2)


def test_equivalence_undetermined_for_uncertified_q():
    # same principal orbit dimension, non-identical q spans: su(2) vs u(2)
    # conjugated: honest answer is 'undetermined' from sampling alone
    su2 = []
    E = np.zeros((2, 2), dtype=complex); E[0, 1], E[1, 0] = 1.0, -1.0; su2.append(E)
    E = np.zeros((2, 2), dtype=complex); E[0, 1], E[1, 0] = 1j, 1j; su2.append(E)
    E = np.zeros((2, 2), dtype=complex); E[0, 0], E[1, 1] = 1j, -1j; su2.append(E)
    eye = np.eye(2, dtype=complex)
    a = PolarActionSpec(n=3, family="I", k=1, q_basis=su2, q_section=RealSubspace(2, [eye[0]]))
    b = family_I_spec(3, 1, "full")
    ans, _ = orbit_equivalence_invariants(a, b)
    assert ans == "undetermined"


def test_equivalence_rejects_different_n():
    with pytest.raises(ValueError):
        orbit_equivalence_invariants(family_I_spec(3, 3, "none"), family_I_spec(2, 2, "none"))


# --- enumeration -----------------------------------------------------------------------


def test_enumerate_n2_gives_nine_classes():
    catalog = enumerate_moduli(2)
    assert len(catalog) == 9


def test_enumerate_n2_classes_are_pairwise_inequivalent():
    catalog = enumerate_moduli(2)
    for i, a in enumerate(catalog):
        for b in catalog[i + 1 :]:
            ans, _ = orbit_equivalence_invariants(a.spec, b.spec)
            assert ans != "yes"


def test_enumerate_n2_all_polar():
    for entry in enumerate_moduli(2):
        rd, h, sigma = build_action(entry.spec)
        report = check_polarity(rd, h, sigma, seed=6)
        assert report.verdict, entry.label


def test_enumerate_count_strictly_increases_with_grid():
    grids = [[], [math.pi / 4], [math.pi / 6, math.pi / 4], [math.pi / 6, math.pi / 4, math.pi / 3]]
    counts = [len(enumerate_moduli(3, g)) for g in grids]
    assert all(c2 > c1 for c1, c2 in zip(counts, counts[1:]))


def test_enumerate_rejects_bad_grid():
    with pytest.raises(ValueError):
        enumerate_moduli(3, [math.pi / 2])


# --- serialization -----------------------------------------------------------------------


def test_spec_json_roundtrip_family_II():
    spec = canonical_family_II(3, "full", [(math.pi / 3, 2)])
    spec2 = PolarActionSpec.from_json(spec.to_json())
    assert spec2.n == spec.n and spec2.family == "II" and spec2.b_flag == "full"
    assert spec2.w.same_span(spec.w)
    rd, h, sigma = build_action(spec2)
    assert check_polarity(rd, h, sigma).verdict


def test_spec_json_roundtrip_family_I():
    spec = family_I_spec(3, 1, "torus")
    spec2 = PolarActionSpec.from_json(spec.to_json())
    assert spec2.k == 1 and len(spec2.q_basis) == 2
    rd, h, sigma = build_action(spec2)
    assert check_polarity(rd, h, sigma).verdict


def test_report_json_has_all_residuals():
    spec = canonical_family_II(2, "full", [])
    rd, h, sigma = build_action(spec)
    data = check_polarity(rd, h, sigma).to_json()
    for key in (
        "is_subalgebra", "subalgebra_residual", "section_in_normal",
        "section_residual", "bracket_condition", "bracket_residual",
        "slice_condition", "dim_normal", "dim_section", "dim_isotropy_orbit",
        "cohomogeneity", "transitive", "verdict",
    ):
        assert key in data
