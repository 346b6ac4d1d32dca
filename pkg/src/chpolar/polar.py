"""Constructors and numerical checks for the two polar-action families.

Family I:  h = q + so(1, k) inside su(1, n), with q a subalgebra of
u(n - k) acting on the trailing C^{n-k} block (embedded tracelessly; the
dropped scalar part acts trivially on the space).  One orbit is a totally
geodesic R H^k, the others lie in tubes around it.

Family II: h = q + b + w + g_2a, with b in {0, a}, w a real subspace of
g_a ~ C^{n-1}, and q a subalgebra of k_0 normalizing w.  The claimed
section is exp_o((a - b) + (1 - theta) s) for a totally real s in the
orthogonal complement of w.

``check_polarity`` evaluates the slice-representation criterion at the base
point: the section must sit in the normal space of the orbit, h must be
orthogonal to the section and its brackets, the isotropy action must move
the section orthogonally to itself, and the isotropy orbit of a generic
section vector together with the section must fill the normal space.  These
are the necessary conditions of the criterion; for the compact isotropy
representations arising here the dimension-saturation check at a regular
vector certifies the section property without invoking the classification
of polar representations (a documented limitation for exotic inputs).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kahler
from .kahler import RealSubspace
from .su1n import ConsistencyError, bracket, build_root_decomposition, theta

TOL_RANK = 1e-8


def _orthonormal_rows(rows, tol=1e-10):
    A = np.array(rows, dtype=float)
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0)
    u, s, vh = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return vh[:rank]


def _rank(rows, tol=TOL_RANK):
    A = np.array(rows, dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def _span_contains(span_rows, vec, tol=1e-8):
    resid = vec - span_rows.T @ (span_rows @ vec) if span_rows.size else vec
    return np.linalg.norm(resid) <= tol * max(1.0, np.linalg.norm(vec))


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------


@dataclass
class PolarActionSpec:
    """Input data for one of the two polar-action families.

    family 'I':  k in {0..n}; q_basis skew-Hermitian on C^{n-k}; q_section a
    totally real subspace of C^{n-k} claimed as a section of the q-action.

    family 'II': b_flag in {'zero', 'full'}; w a real subspace of C^{n-1};
    q_basis skew-Hermitian on C^{n-1} normalizing w; q_section a totally
    real subspace of C^{n-1} orthogonal to w.
    """

    n: int
    family: str
    k: int | None = None
    b_flag: str | None = None
    w: RealSubspace | None = None
    q_basis: list = field(default_factory=list)
    q_section: RealSubspace | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.family not in ("I", "II"):
            raise ValueError("family must be 'I' or 'II'")
        if self.family == "I":
            if self.k is None or not (0 <= self.k <= self.n):
                raise ValueError("family I needs k in {0..n}")
            m = self.n - self.k
            if self.q_section is None:
                self.q_section = RealSubspace.zero(m)
        else:
            if self.b_flag not in ("zero", "full"):
                raise ValueError("family II needs b_flag 'zero' or 'full'")
            if self.w is None:
                self.w = RealSubspace.zero(self.n - 1)
            if self.q_section is None:
                self.q_section = RealSubspace.zero(self.n - 1)
        self.q_basis = [np.asarray(N, dtype=complex) for N in self.q_basis]

    def to_json(self):
        out = {"n": self.n, "family": self.family, "seed": self.seed}
        if self.family == "I":
            out["k"] = self.k
        else:
            out["b"] = self.b_flag
            out["w"] = self.w.to_json()
        out["q_basis"] = [
            [[[float(z.real), float(z.imag)] for z in row] for row in N]
            for N in self.q_basis
        ]
        out["q_section"] = self.q_section.to_json()
        return out

    @classmethod
    def from_json(cls, data):
        family = data["family"]
        q_basis = [
            np.array([[complex(re, im) for re, im in row] for row in N])
            for N in data.get("q_basis", [])
        ]
        q_section = (
            RealSubspace.from_json(data["q_section"]) if "q_section" in data else None
        )
        if family == "I":
            return cls(
                n=int(data["n"]), family="I", k=int(data["k"]),
                q_basis=q_basis, q_section=q_section, seed=int(data.get("seed", 0)),
            )
        w = RealSubspace.from_json(data["w"]) if "w" in data else None
        return cls(
            n=int(data["n"]), family="II", b_flag=data["b"], w=w,
            q_basis=q_basis, q_section=q_section, seed=int(data.get("seed", 0)),
        )


@dataclass
class PolarityReport:
    """Outcome of the numerical polarity criterion, with all residuals."""

    is_subalgebra: bool
    subalgebra_residual: float
    section_in_normal: bool
    section_residual: float
    bracket_condition: bool
    bracket_residual: float
    slice_condition: bool
    dim_normal: int
    dim_section: int
    dim_isotropy_orbit: int
    cohomogeneity: int
    transitive: bool
    verdict: bool

    def to_json(self):
        return {
            "is_subalgebra": self.is_subalgebra,
            "subalgebra_residual": self.subalgebra_residual,
            "section_in_normal": self.section_in_normal,
            "section_residual": self.section_residual,
            "bracket_condition": self.bracket_condition,
            "bracket_residual": self.bracket_residual,
            "slice_condition": self.slice_condition,
            "dim_normal": self.dim_normal,
            "dim_section": self.dim_section,
            "dim_isotropy_orbit": self.dim_isotropy_orbit,
            "cohomogeneity": self.cohomogeneity,
            "transitive": self.transitive,
            "verdict": self.verdict,
        }


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _check_q_subalgebra(q_basis, tol=1e-9):
    if not q_basis:
        return
    m = q_basis[0].shape[0]
    for N in q_basis:
        if N.shape != (m, m):
            raise ValueError("q_basis matrices must share one size")
        if np.abs(N + N.conj().T).max() > tol * max(1.0, np.abs(N).max()):
            raise ValueError("q_basis matrices must be skew-Hermitian")
    flat = _orthonormal_rows(
        [np.concatenate([N.real.reshape(-1), N.imag.reshape(-1)]) for N in q_basis]
    )
    for N, M in itertools.combinations_with_replacement(q_basis, 2):
        C = N @ M - M @ N
        v = np.concatenate([C.real.reshape(-1), C.imag.reshape(-1)])
        if not _span_contains(flat, v, tol):
            raise ValueError("q_basis is not closed under the bracket")


def build_family_II(rd_or_n, b_flag, w, q_basis, q_section):
    """Assemble h = q + b + w + g_2a and its claimed section tangent in p.

    Returns (h_basis, sigma_basis) as lists of algebra elements.  Raises
    ValueError when the algebra preconditions fail ([q, w] not inside w or
    q not a subalgebra) and ConsistencyError if the assembled h is not
    closed under the bracket.  The claimed section is passed through
    untouched: a bad claim (not totally real, meeting w, ...) is the
    criterion's job to reject, so that deliberately wrong claims produce a
    false verdict with residuals instead of an input error.
    """
    rd = rd_or_n if hasattr(rd_or_n, "onb") else build_root_decomposition(rd_or_n)
    n = rd.n
    if b_flag not in ("zero", "full"):
        raise ValueError("b_flag must be 'zero' or 'full'")
    w = w if w is not None else RealSubspace.zero(n - 1)
    s = q_section if q_section is not None else RealSubspace.zero(n - 1)
    if w.ambient_complex_dim != n - 1 or s.ambient_complex_dim != n - 1:
        raise ValueError("w and q_section must live in C^{n-1}")
    q_basis = [np.asarray(N, dtype=complex) for N in q_basis]
    _check_q_subalgebra(q_basis)
    for N in q_basis:
        scale = max(1.0, float(np.abs(N).max()))
        for bvec in w.basis:
            img = N @ bvec
            if np.linalg.norm(img - w.project(img)) > 1e-8 * scale:
                raise ValueError("q does not normalize w")

    h = [rd.k0_matrix(N) for N in q_basis]
    if b_flag == "full":
        h.append(rd.B)
    h += [rd.galpha_matrix(bvec) for bvec in w.basis]
    h.append(rd.Z)

    sigma = []
    if b_flag == "zero":
        sigma.append(rd.B)
    for svec in s.basis:
        X = rd.galpha_matrix(svec)
        sigma.append(X - theta(X))

    _verify_closed(rd, h)
    return h, sigma


def build_family_I(rd_or_n, k, q_basis, q_section):
    """Assemble h = q + so(1, k) and its claimed section tangent in p.

    so(1, k) occupies the upper-left (k+1) x (k+1) block as real matrices;
    q acts on the trailing C^{n-k} block, embedded as diag(0, N) minus its
    trace scalar (the scalar generates the trivial-acting center of u(1, n),
    so the action on the space is the standard q-action).  The section
    tangent is the line R(iB) for k >= 1 plus the claimed q-section inside
    the totally geodesic complementary block.
    """
    rd = rd_or_n if hasattr(rd_or_n, "onb") else build_root_decomposition(rd_or_n)
    n = rd.n
    if not (0 <= k <= n):
        raise ValueError("k must be in {0..n}")
    m = n - k
    q_basis = [np.asarray(N, dtype=complex) for N in q_basis]
    for N in q_basis:
        if N.shape != (m, m):
            raise ValueError(f"q_basis must act on C^{m}")
    _check_q_subalgebra(q_basis)
    s = q_section if q_section is not None else RealSubspace.zero(m)
    if s.ambient_complex_dim != m:
        raise ValueError(f"q_section must live in C^{m}")

    from .su1n import AlgElement

    N1 = n + 1
    eps = np.array([-1.0] + [1.0] * n)
    h = []
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            E = np.zeros((N1, N1), dtype=complex)
            E[i, j] = 1.0
            E[j, i] = -eps[i] * eps[j]
            h.append(AlgElement(n, E))
    for N in q_basis:
        E = np.zeros((N1, N1), dtype=complex)
        E[k + 1 :, k + 1 :] = N
        E -= (np.trace(N) / (n + 1)) * np.eye(N1)
        h.append(AlgElement(n, E))

    sigma = []
    if k >= 1:
        z = np.zeros(n, dtype=complex)
        z[0] = 0.5j
        sigma.append(rd.p_matrix(z))  # i B, normal to T_o RH^k inside T_o CH^k
    for svec in s.basis:
        z = np.zeros(n, dtype=complex)
        z[k:] = svec
        sigma.append(rd.p_matrix(z))

    _verify_closed(rd, h)
    return h, sigma


def _verify_closed(rd, h, tol=1e-9):
    if not h:
        return
    rows = _orthonormal_rows([rd.coords(X) for X in h])
    for X, Y in itertools.combinations_with_replacement(h, 2):
        v = rd.coords(bracket(X, Y))
        if not _span_contains(rows, v, tol):
            raise ConsistencyError("assembled h is not closed under the bracket")


def build_action(spec):
    """Dispatch a PolarActionSpec to its family builder.

    Returns (rd, h_basis, sigma_basis)."""
    rd = build_root_decomposition(spec.n)
    if spec.family == "I":
        h, sigma = build_family_I(rd, spec.k, spec.q_basis, spec.q_section)
    else:
        h, sigma = build_family_II(rd, spec.b_flag, spec.w, spec.q_basis, spec.q_section)
    return rd, h, sigma


# ---------------------------------------------------------------------------
# the polarity criterion
# ---------------------------------------------------------------------------


def check_polarity(rd_or_n, h_basis, sigma_basis, seed=0, samples=24, tol_rank=TOL_RANK):
    """Evaluate the polarity criterion for a subalgebra h and claimed
    section tangent sigma inside p.

    Checks, in coordinates of the root-space ONB:

    1. h is closed under the bracket (residual reported);
    2. sigma lies in the normal space nu = p minus the orbit tangent;
    3. <h, sigma + [sigma, sigma]> = 0 (max residual over unit vectors);
    4. the isotropy algebra h_o = h cap k moves sigma orthogonally to
       itself, and at a sampled regular xi in sigma (the sample maximizing
       dim[h_o, xi]) the span sigma + [h_o, xi] fills nu.

    The verdict is the conjunction.  A transitive action (empty normal
    space) is reported as vacuously polar with cohomogeneity 0.
    """
    rd = rd_or_n if hasattr(rd_or_n, "onb") else build_root_decomposition(rd_or_n)
    N = rd.dim
    rng = np.random.default_rng(seed)

    h_rows = _orthonormal_rows([rd.coords(X) for X in h_basis])
    sig_rows = _orthonormal_rows([rd.coords(X) for X in sigma_basis]) \
        if sigma_basis else np.zeros((0, N))

    # 1. subalgebra
    sub_resid = 0.0
    h_elems = [rd.from_coords(r) for r in h_rows]
    for X, Y in itertools.combinations(h_elems, 2):
        v = rd.coords(bracket(X, Y))
        resid = v - h_rows.T @ (h_rows @ v)
        sub_resid = max(sub_resid, float(np.linalg.norm(resid)))
    is_subalgebra = sub_resid <= 1e-8

    # 2. orbit tangent, normal space, section containment
    theta_mat = _theta_coords(rd)
    P_p = 0.5 * (np.eye(N) - theta_mat)
    orbit_rows = _orthonormal_rows([P_p @ r for r in h_rows], 1e-10) \
        if h_rows.size else np.zeros((0, N))
    p_rows = _orthonormal_rows(P_p, 1e-10)
    nu_rows = _orthonormal_rows(
        [r - orbit_rows.T @ (orbit_rows @ r) for r in p_rows], 1e-10
    ) if p_rows.size else np.zeros((0, N))
    dim_nu = nu_rows.shape[0]

    sec_resid = 0.0
    for r in sig_rows:
        proj = nu_rows.T @ (nu_rows @ r) if dim_nu else np.zeros(N)
        sec_resid = max(sec_resid, float(np.linalg.norm(r - proj)))
    section_in_normal = sec_resid <= 1e-8

    # 3. <h, sigma + [sigma, sigma]> = 0, scale-normalized via unit bases
    br_resid = 0.0
    sig_elems = [rd.from_coords(r) for r in sig_rows]
    for r in sig_rows:
        if h_rows.size:
            br_resid = max(br_resid, float(np.abs(h_rows @ r).max()))
    for X, Y in itertools.combinations(sig_elems, 2):
        v = rd.coords(bracket(X, Y))
        if h_rows.size:
            br_resid = max(br_resid, float(np.abs(h_rows @ v).max()))
    bracket_condition = br_resid <= 1e-9

    # 4. slice condition at a sampled regular section vector
    ho_rows = _intersect_with_k(rd, h_rows, theta_mat)
    ho_elems = [rd.from_coords(r) for r in ho_rows]
    ortho_resid = 0.0
    for T in ho_elems:
        for r in sig_rows:
            v = rd.coords(bracket(T, rd.from_coords(r)))
            if sig_rows.size:
                ortho_resid = max(ortho_resid, float(np.abs(sig_rows @ v).max()))

    dim_orbit_xi = 0
    best_stack = None
    k_sec = sig_rows.shape[0]
    if k_sec and ho_elems:
        for _ in range(samples):
            coeff = rng.standard_normal(k_sec)
            coeff /= np.linalg.norm(coeff)
            xi = rd.from_coords(coeff @ sig_rows)
            moved = [rd.coords(bracket(T, xi)) for T in ho_elems]
            d = _rank(moved, tol_rank)
            if d >= dim_orbit_xi:
                dim_orbit_xi = d
                best_stack = moved
    joint = list(sig_rows)
    if best_stack is not None:
        joint += best_stack
    dim_joint = _rank(joint, tol_rank) if joint else 0
    slice_condition = (ortho_resid <= 1e-8) and (dim_joint == dim_nu)

    transitive = dim_nu == 0
    if transitive:
        slice_condition = True
        section_in_normal = True

    verdict = bool(
        is_subalgebra and section_in_normal and bracket_condition and slice_condition
    )
    return PolarityReport(
        is_subalgebra=is_subalgebra,
        subalgebra_residual=sub_resid,
        section_in_normal=section_in_normal,
        section_residual=sec_resid,
        bracket_condition=bracket_condition,
        bracket_residual=br_resid,
        slice_condition=slice_condition,
        dim_normal=dim_nu,
        dim_section=int(k_sec),
        dim_isotropy_orbit=dim_orbit_xi,
        cohomogeneity=int(k_sec),
        transitive=transitive,
        verdict=verdict,
    )


_THETA_CACHE = {}


def _theta_coords(rd):
    if rd.n not in _THETA_CACHE:
        cols = [rd.coords(theta(E)) for E in rd.onb]
        _THETA_CACHE[rd.n] = np.array(cols).T
    return _THETA_CACHE[rd.n]


def _intersect_with_k(rd, h_rows, theta_mat):
    """Rows spanning h cap k: combinations of h with vanishing p-part."""
    if not h_rows.size:
        return np.zeros((0, rd.dim))
    P_p = 0.5 * (np.eye(rd.dim) - theta_mat)
    A = h_rows @ P_p  # rows: p-components of the h basis
    u, s, vh = np.linalg.svd(A.T, full_matrices=True)
    # nullspace of A^T . c = 0 over coefficient vectors c
    s_full = np.zeros(h_rows.shape[0])
    s_full[: s.shape[0]] = s
    cutoff = 1e-9 * max(1.0, s[0] if s.size else 0.0)
    combos = vh[np.sum(s_full > cutoff):]
    if combos.size == 0:
        return np.zeros((0, rd.dim))
    return _orthonormal_rows(combos @ h_rows, 1e-10)


# ---------------------------------------------------------------------------
# regular vectors and orbit equivalence
# ---------------------------------------------------------------------------


def regular_vectors(q_basis, w, s, samples=100, seed=0, tol_rank=TOL_RANK):
    """Sample unit vectors xi in s and flag whether [q, xi] fills
    g_a minus (w + s), i.e. the rank of {N xi} equals
    dim g_a - dim w - dim s.

    Everything happens in the C^{n-1} model of g_a.  Returns a list of
    (xi, flag) pairs.
    """
    m = w.ambient_complex_dim
    if s.ambient_complex_dim != m:
        raise ValueError("w and s must share the ambient space")
    for a in s.basis:
        for b in w.basis:
            if abs(float(np.real(np.vdot(b, a)))) > 1e-8:
                raise ValueError("s must be orthogonal to w")
    target = 2 * m - w.dim - s.dim
    rng = np.random.default_rng(seed)
    q_basis = [np.asarray(N, dtype=complex) for N in q_basis]
    out = []
    if s.dim == 0:
        return out
    for _ in range(samples):
        coeff = rng.standard_normal(s.dim)
        coeff /= np.linalg.norm(coeff)
        xi = coeff @ s.basis
        moved = [np.concatenate([(N @ xi).real, (N @ xi).imag]) for N in q_basis]
        d = _rank(moved, tol_rank) if moved else 0
        out.append((xi, d == target))
    return out


def _principal_orbit_dim(q_basis, sub, samples, rng, tol_rank=TOL_RANK):
    """Largest sampled orbit dimension of the q-action restricted to sub."""
    if sub.dim == 0 or not q_basis:
        return 0
    best = 0
    for _ in range(samples):
        coeff = rng.standard_normal(sub.dim)
        coeff /= np.linalg.norm(coeff)
        v = coeff @ sub.basis
        moved = []
        for N in q_basis:
            img = sub.project(N @ v)  # orbit stays in sub when q normalizes it
            moved.append(np.concatenate([img.real, img.imag]))
        best = max(best, _rank(moved, tol_rank))
    return best


def _span_rows_complex(mats):
    return _orthonormal_rows(
        [np.concatenate([M.real.reshape(-1), M.imag.reshape(-1)]) for M in mats]
    )


def _same_matrix_span(mats1, mats2, tol=1e-7):
    if len(mats1) == 0 and len(mats2) == 0:
        return True
    if (len(mats1) == 0) != (len(mats2) == 0):
        return False
    r1 = _span_rows_complex(mats1)
    r2 = _span_rows_complex(mats2)
    if r1.shape[0] != r2.shape[0]:
        return False
    ok12 = all(_span_contains(r2, v, tol) for v in r1)
    ok21 = all(_span_contains(r1, v, tol) for v in r2)
    return ok12 and ok21


def orbit_equivalence_invariants(spec1, spec2, samples=40, seed=0):
    """Decide orbit equivalence of two constructed actions where the
    congruence invariants allow it.

    Returns (answer, report) with answer in {'yes', 'no', 'undetermined'}.
    The decision tree follows the congruence invariants: family and, within
    family II, the b-flag and the Kahler moduli of w are complete
    obstructions; matching invariants plus conjugate q-data (checked via
    the congruence witness) give 'yes'; otherwise the comparison of the
    q-representations is left 'undetermined', since sampling alone cannot
    certify orbit equivalence of arbitrary polar representations.
    """
    if spec1.n != spec2.n:
        raise ValueError("actions live on different spaces")
    report = {"family": (spec1.family, spec2.family)}
    rng = np.random.default_rng(seed)

    if spec1.family != spec2.family:
        report["reason"] = "family mismatch (mean curvature separates the families)"
        return "no", report

    if spec1.family == "I":
        report["k"] = (spec1.k, spec2.k)
        if spec1.k != spec2.k:
            report["reason"] = "different totally geodesic real hyperbolic cores"
            return "no", report
        m = spec1.n - spec1.k
        amb = RealSubspace.full(m)
        d1 = _principal_orbit_dim(spec1.q_basis, amb, samples, rng)
        d2 = _principal_orbit_dim(spec2.q_basis, amb, samples, rng)
        report["principal_orbit_dims"] = (d1, d2)
        if d1 != d2:
            report["reason"] = "q-actions have different principal orbit dimensions"
            return "no", report
        if _same_matrix_span(spec1.q_basis, spec2.q_basis):
            report["reason"] = "identical q-data"
            return "yes", report
        report["reason"] = "q-representations not certified equivalent by sampling"
        return "undetermined", report

    # family II
    report["b"] = (spec1.b_flag, spec2.b_flag)
    if spec1.b_flag != spec2.b_flag:
        report["reason"] = "b-flags differ (mean curvature of the core orbits)"
        return "no", report
    ok, witness = kahler.congruent(spec1.w, spec2.w)
    report["w_moduli"] = (
        kahler.decompose(spec1.w).moduli(),
        kahler.decompose(spec2.w).moduli(),
    )
    if not ok:
        report["reason"] = "Kahler moduli of w differ"
        return "no", report
    wperp1 = spec1.w.perp()
    wperp2 = spec2.w.perp()
    d1 = _principal_orbit_dim(spec1.q_basis, wperp1, samples, rng)
    d2 = _principal_orbit_dim(spec2.q_basis, wperp2, samples, rng)
    report["principal_orbit_dims"] = (d1, d2)
    if d1 != d2:
        report["reason"] = "q-actions on w-perp have different principal orbit dimensions"
        return "no", report
    moved = [witness @ N @ witness.conj().T for N in spec1.q_basis]
    conj_match = _same_matrix_span(moved, spec2.q_basis)
    back = [witness.conj().T @ N @ witness for N in spec2.q_basis]
    conj_match = conj_match and _same_matrix_span(back, spec1.q_basis)
    report["witness_unitarity"] = float(
        np.abs(witness @ witness.conj().T - np.eye(spec1.w.ambient_complex_dim)).max()
    ) if witness is not None else None
    if conj_match:
        report["reason"] = "w congruent and q-data conjugate by the witness"
        return "yes", report
    report["reason"] = "q-representations not certified equivalent by sampling"
    return "undetermined", report


# ---------------------------------------------------------------------------
# moduli enumeration
# ---------------------------------------------------------------------------


@dataclass
class CatalogEntry:
    label: str
    spec: PolarActionSpec


def _torus_basis(m):
    out = []
    for j in range(m):
        E = np.zeros((m, m), dtype=complex)
        E[j, j] = 1j
        out.append(E)
    return out


def _family_I_entries(n):
    entries = []
    for k in range(n, -1, -1):
        m = n - k
        if m == 0:
            entries.append(CatalogEntry(
                label=f"I:k={k},q=0",
                spec=PolarActionSpec(n=n, family="I", k=k),
            ))
            continue
        eye = np.eye(m, dtype=complex)
        line = RealSubspace(m, [eye[0]])
        entries.append(CatalogEntry(
            label=f"I:k={k},q=u({m})",
            spec=PolarActionSpec(
                n=n, family="I", k=k,
                q_basis=kahler.skew_hermitian_basis(m), q_section=line,
            ),
        ))
        if m >= 2:
            entries.append(CatalogEntry(
                label=f"I:k={k},q=t({m})",
                spec=PolarActionSpec(
                    n=n, family="I", k=k,
                    q_basis=_torus_basis(m),
                    q_section=RealSubspace(m, list(eye)),
                ),
            ))
    return entries


def _admissible_moduli(m, angle_grid):
    """All (angle, dim) multisets fitting in C^m: complex footprint
    m_0/2 + sum m_phi + m_{pi/2} <= m with even m_0, m_phi."""
    angles = sorted(set(float(a) for a in angle_grid))
    for a in angles:
        if not (0.0 < a < math.pi / 2):
            raise ValueError("angle grid must lie strictly inside (0, pi/2)")
    results = []
    interior = list(angles)

    def rec(idx, footprint, current):
        if idx == len(interior):
            # complex part: m_0 = 2 c0 with c0 complex dims
            for c0 in range(0, m - footprint + 1):
                for mpi2 in range(0, m - footprint - c0 + 1):
                    mod = list(current)
                    if c0:
                        mod.append((0.0, 2 * c0))
                    if mpi2:
                        mod.append((math.pi / 2, mpi2))
                    results.append(sorted(mod))
            return
        phi = interior[idx]
        pairs = 0
        while footprint + 2 * pairs <= m:
            cur = current + ([(phi, 2 * pairs)] if pairs else [])
            rec(idx + 1, footprint + 2 * pairs, cur)
            pairs += 1

    rec(0, 0, [])
    uniq = []
    for mod in results:
        if mod not in uniq:
            uniq.append(mod)
    return uniq


def normalizer_section(w):
    """The canonical section of the full-normalizer action on w-perp: one
    line per constant-angle factor of w-perp (including the complex one)."""
    wperp = w.perp()
    if wperp.dim == 0:
        return RealSubspace.zero(w.ambient_complex_dim)
    rows = []
    for _, factor in kahler.decompose(wperp).factors:
        rows.append(factor.basis[0])
    return RealSubspace(w.ambient_complex_dim, rows)


def _family_II_entries(n, angle_grid):
    entries = []
    for moduli in _admissible_moduli(n - 1, angle_grid):
        w = kahler.canonical_subspace(n - 1, moduli)
        q = kahler.normalizer_algebra(w)
        s = normalizer_section(w)
        for b_flag in ("full", "zero"):
            if b_flag == "full" and w.dim == 2 * (n - 1):
                continue  # transitive action, excluded from the catalog
            label = f"II:b={b_flag},w={[(round(a, 6), d) for a, d in moduli]}"
            entries.append(CatalogEntry(
                label=label,
                spec=PolarActionSpec(
                    n=n, family="II", b_flag=b_flag, w=w,
                    q_basis=q, q_section=s,
                ),
            ))
    return entries


def enumerate_moduli(n, angle_grid=(), seed=0):
    """One representative per structural moduli class.

    Family I runs over k with q drawn from the small fixed table (trivial,
    full unitary, maximal torus); family II runs over the b-flag and the
    admissible Kahler moduli of w built from {0, pi/2} plus the angle grid,
    always with the full normalizer as q.  Entries are deduplicated with
    orbit_equivalence_invariants.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    raw = _family_I_entries(n) + _family_II_entries(n, angle_grid)
    kept = []
    for entry in raw:
        dup = False
        for prev in kept:
            ans, _ = orbit_equivalence_invariants(prev.spec, entry.spec, seed=seed)
            if ans == "yes":
                dup = True
                break
        if not dup:
            kept.append(entry)
    return kept
