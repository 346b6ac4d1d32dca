"""Matrix model of su(1, n) and its restricted root space decomposition.

Elements are traceless complex (n+1)x(n+1) matrices X with
X* I + I X = 0 for I = diag(-1, 1, ..., 1).  The Cartan involution is
theta(X) = I X I; the positive definite inner product is

    <X, Y> = -c Re tr(theta(X) Y),

with the scale c fixed so that the distinguished unit vector B spanning the
maximal abelian subspace a has <B, B> = 1 (this pins c = 2 and makes the
holomorphic sectional curvature of the associated symmetric space -1).

All root spaces are computed as eigenspaces of ad(B), which has eigenvalues
{-1, -1/2, 0, 1/2, 1}.  Distinguished generators: Z spans g_{2a} with
<Z, Z> = 2 and sign fixed by J B = Z, where J is the complex structure of
the solvable model; J on g_a is J X = -[theta(X), Z].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.linalg

TOL_ALG = 1e-12     # membership tolerances for su(1, n)
TOL_SNAP = 1e-8     # eigenvalue snapping for root spaces
TOL_CONSIST = 1e-9  # agreement of redundant computations


class ConsistencyError(RuntimeError):
    """Two independently computed quantities that must agree did not."""


def _signature(n):
    return np.diag([-1.0] + [1.0] * n).astype(complex)


@dataclass(frozen=True)
class AlgElement:
    """An element of su(1, n) in the matrix model."""

    n: int
    matrix: np.ndarray = field(repr=False)

    def __init__(self, n, matrix, validate=True):
        n = int(n)
        mat = np.asarray(matrix, dtype=complex)
        if mat.shape != (n + 1, n + 1):
            raise ValueError(f"matrix must be {(n + 1, n + 1)}, got {mat.shape}")
        if validate:
            scale = max(1.0, np.abs(mat).max())
            if abs(np.trace(mat)) > TOL_ALG * scale * (n + 1):
                raise ValueError("matrix is not traceless")
            I = _signature(n)
            if np.abs(mat.conj().T @ I + I @ mat).max() > TOL_ALG * scale * 10:
                raise ValueError("matrix does not satisfy X* I + I X = 0")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", mat)

    def __add__(self, other):
        self._check(other)
        return AlgElement(self.n, self.matrix + other.matrix, validate=False)

    def __sub__(self, other):
        self._check(other)
        return AlgElement(self.n, self.matrix - other.matrix, validate=False)

    def __rmul__(self, scalar):
        return AlgElement(self.n, float(scalar) * self.matrix, validate=False)

    def __neg__(self):
        return AlgElement(self.n, -self.matrix, validate=False)

    def _check(self, other):
        if not isinstance(other, AlgElement) or other.n != self.n:
            raise ValueError("dimension mismatch between algebra elements")

    def norm(self):
        return float(np.sqrt(max(0.0, inner(self, self))))

    def to_json(self):
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]

    @classmethod
    def from_json(cls, n, data):
        mat = np.array([[complex(re, im) for re, im in row] for row in data])
        return cls(n, mat)


def bracket(X, Y):
    """Lie bracket, the matrix commutator."""
    X._check(Y)
    return AlgElement(X.n, X.matrix @ Y.matrix - Y.matrix @ X.matrix, validate=False)


def theta(X):
    """Cartan involution theta(X) = I X I."""
    I = _signature(X.n)
    return AlgElement(X.n, I @ X.matrix @ I, validate=False)


_METRIC_SCALE = 2.0  # solved once from <B, B> = 1; see build_root_decomposition


def inner(X, Y):
    """The inner product <X, Y> = -c Re tr(theta(X) Y), positive definite.

    Satisfies the skew-adjointness <ad(X)Y, W> = -<Y, ad(theta X) W>.
    """
    X._check(Y)
    I = _signature(X.n)
    return -_METRIC_SCALE * float(np.real(np.trace(I @ X.matrix @ I @ Y.matrix)))


def inner_an(X, Y, tol=1e-9):
    """Left-invariant metric of AN: <X, Y> on a, halved on n = g_a + g_2a.

    Both arguments must lie in a + n (to tolerance), else ValueError.
    """
    rd = build_root_decomposition(X.n)
    Xa, Xn = rd.split_a_n(X, tol)
    Ya, Yn = rd.split_a_n(Y, tol)
    return inner(Xa, Ya) + 0.5 * inner(Xn, Yn)


def ad(X):
    """The linear map ad(X) = [X, .] as a matrix in the root-space ONB of g."""
    rd = build_root_decomposition(X.n)
    cols = [rd.coords(bracket(X, E)) for E in rd.onb]
    return np.array(cols).T


def ad_exp(X):
    """Ad(exp X) as a matrix on g, in the root-space ONB.

    Computed both as expm(ad X) and as conjugation by expm(X); the two must
    agree to TOL_CONSIST, otherwise a ConsistencyError is raised.
    """
    rd = build_root_decomposition(X.n)
    via_ad = scipy.linalg.expm(ad(X))
    g = scipy.linalg.expm(X.matrix)
    ginv = scipy.linalg.expm(-X.matrix)
    cols = []
    for E in rd.onb:
        cols.append(rd.coords(AlgElement(X.n, g @ E.matrix @ ginv, validate=False)))
    via_conj = np.array(cols).T
    scale = max(1.0, np.abs(via_conj).max())
    if np.abs(via_ad - via_conj).max() > TOL_CONSIST * scale:
        raise ConsistencyError("expm(ad X) and conjugation by exp(X) disagree")
    return via_conj


@dataclass(frozen=True)
class RootDecomposition:
    """Restricted root space data of su(1, n) for a fixed n.

    The global orthonormal basis ``onb`` is ordered by blocks

        [g_{-2a} | g_{-a} | k_0 | a | g_a | g_{2a}]

    and index ranges for each block are exposed.  The g_a block is the
    adapted frame F_1, J F_1, F_2, J F_2, ..., which realizes the complex
    identification g_a ~ C^{n-1}; all of these are <,>-orthonormal (the
    AN-orthonormal frame differs by a factor sqrt(2) and is also stored).
    """

    n: int
    c: float                      # metric scale in <X,Y> = -c Re tr(theta(X) Y)
    onb: tuple                    # tuple[AlgElement], <,>-orthonormal
    slices: dict                  # block name -> slice into onb
    B: AlgElement                 # unit vector spanning a
    Z: AlgElement                 # generator of g_2a, <Z,Z> = 2, J B = Z
    galpha_frame: tuple           # AN-orthonormal adapted frame of g_a
    J_galpha: np.ndarray          # J matrix on g_a in the onb block basis
    _dual: np.ndarray = field(repr=False)   # coordinate functionals
    _mats: np.ndarray = field(repr=False)   # stacked ONB matrices

    # -- coordinates -------------------------------------------------------

    @property
    def dim(self):
        return len(self.onb)

    def coords(self, X):
        """Coordinates of X in the global ONB (Euclidean for <,>)."""
        return np.real(self._dual @ X.matrix.reshape(-1))

    def from_coords(self, v):
        mat = np.tensordot(np.asarray(v, dtype=float), self._mats, axes=(0, 0))
        return AlgElement(self.n, mat, validate=False)

    def block(self, name):
        """The ONB elements of a root-space block."""
        return list(self.onb[self.slices[name]])

    def project_block(self, X, names):
        """Projection of X onto the direct sum of the named blocks."""
        v = self.coords(X)
        mask = np.zeros(self.dim)
        for name in names:
            mask[self.slices[name]] = 1.0
        return self.from_coords(v * mask)

    def k_basis(self):
        """Orthonormal basis of k (the +1 eigenspace of theta): k_0 together
        with the symmetrized root vectors.  dim k = n^2."""
        out = list(self.block("k_0"))
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        for E in self.block("g_a") + self.block("g_2a"):
            out.append(inv_sqrt2 * (E + theta(E)))
        return out

    def p_basis(self):
        """Orthonormal basis of p (the -1 eigenspace of theta, the tangent
        space at the base point).  dim p = 2n."""
        out = [self.B]
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        for E in self.block("g_a") + self.block("g_2a"):
            out.append(inv_sqrt2 * (E - theta(E)))
        return out

    def split_a_n(self, X, tol=1e-9):
        """Split X = X_a + X_n; raise if X is not in a + n."""
        Xa = self.project_block(X, ["a"])
        Xn = self.project_block(X, ["g_a", "g_2a"])
        rest = X - Xa - Xn
        scale = max(1.0, X.norm())
        if rest.norm() > tol * scale:
            raise ValueError("element does not lie in a + n")
        return Xa, Xn

    # -- the complex identification g_a ~ C^{n-1} ---------------------------

    def galpha_matrix(self, u):
        """Embed u in C^{n-1} as an element of g_a (AN-isometric, J -> i)."""
        u = np.asarray(u, dtype=complex).reshape(-1)
        if u.shape != (self.n - 1,):
            raise ValueError(f"expected vector in C^{self.n - 1}")
        mat = np.zeros((self.n + 1, self.n + 1), dtype=complex)
        for j, z in enumerate(u):
            F = self.galpha_frame[2 * j].matrix
            JF = self.galpha_frame[2 * j + 1].matrix
            mat = mat + z.real * F + z.imag * JF
        return AlgElement(self.n, mat, validate=False)

    def galpha_coords(self, X, tol=1e-9):
        """Inverse of galpha_matrix; raises if X is not in g_a."""
        if (X - self.project_block(X, ["g_a"])).norm() > tol * max(1.0, X.norm()):
            raise ValueError("element does not lie in g_a")
        out = np.zeros(self.n - 1, dtype=complex)
        for j in range(self.n - 1):
            re = 0.5 * inner(X, self.galpha_frame[2 * j])      # AN inner = <,>/2 on n
            im = 0.5 * inner(X, self.galpha_frame[2 * j + 1])
            out[j] = re + 1j * im
        return out

    def J_on_galpha(self, X):
        """The complex structure on g_a: J X = -[theta X, Z]."""
        return -bracket(theta(X), self.Z)

    # -- the bridge k_0 ~ u(n-1) --------------------------------------------

    def k0_matrix(self, N):
        """Embed skew-Hermitian N acting on C^{n-1} as an element of k_0.

        The embedding diag(0, 0, N) - (tr N / (n+1)) Id is the unique element
        of k_0 whose adjoint action on g_a is u -> N u in the adapted frame.
        """
        N = np.asarray(N, dtype=complex)
        if N.shape != (self.n - 1, self.n - 1):
            raise ValueError(f"expected matrix on C^{self.n - 1}")
        if np.abs(N + N.conj().T).max() > 1e-9 * max(1.0, np.abs(N).max()):
            raise ValueError("matrix is not skew-Hermitian")
        mat = np.zeros((self.n + 1, self.n + 1), dtype=complex)
        mat[2:, 2:] = N
        mat -= (np.trace(N) / (self.n + 1)) * np.eye(self.n + 1)
        return AlgElement(self.n, mat)

    def k0_action(self, T, tol=1e-9):
        """Inverse bridge: the u(n-1) matrix by which T in k_0 acts on g_a."""
        if (T - self.project_block(T, ["k_0"])).norm() > tol * max(1.0, T.norm()):
            raise ValueError("element does not lie in k_0")
        ia = T.matrix[0, 0]
        return T.matrix[2:, 2:] - ia * np.eye(self.n - 1)

    # -- tangent space model at the base point -------------------------------

    def p_matrix(self, z):
        """Tangent vector at o: the p-matrix with first row (0, conj(z)) and
        first column (0, z)."""
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape != (self.n,):
            raise ValueError(f"expected vector in C^{self.n}")
        mat = np.zeros((self.n + 1, self.n + 1), dtype=complex)
        mat[0, 1:] = z.conj()
        mat[1:, 0] = z
        return AlgElement(self.n, mat, validate=False)

    def p_coords(self, X, tol=1e-9):
        mat = X.matrix
        z = mat[1:, 0].copy()
        resid = mat.copy()
        resid[0, 1:] = 0
        resid[1:, 0] = 0
        if np.abs(resid).max() > tol * max(1.0, np.abs(mat).max()):
            raise ValueError("element does not lie in p")
        return z

    def multiply_i_p(self, X):
        """The complex structure of T_o CH^n on p: z -> i z."""
        return self.p_matrix(1j * self.p_coords(X))


def _raw_su_basis(n):
    eps = np.array([-1.0] + [1.0] * n)
    out = []
    N1 = n + 1
    for j in range(N1):
        for k in range(j + 1, N1):
            E = np.zeros((N1, N1), complex)
            E[j, k], E[k, j] = 1.0, -eps[j] * eps[k]
            out.append(E)
            E = np.zeros((N1, N1), complex)
            E[j, k], E[k, j] = 1j, 1j * eps[j] * eps[k]
            out.append(E)
    for j in range(n):
        E = np.zeros((N1, N1), complex)
        E[j, j], E[j + 1, j + 1] = 1j, -1j
        out.append(E)
    return out


def _ip_raw(X, Y, I, c):
    return -c * float(np.real(np.trace(I @ X @ I @ Y)))


def _mgs_matrices(mats, I, c):
    out = []
    for X in mats:
        Y = np.array(X, dtype=complex)
        for _ in range(2):
            for E in out:
                Y = Y - _ip_raw(Y, E, I, c) * E
        nrm = np.sqrt(max(0.0, _ip_raw(Y, Y, I, c)))
        if nrm > 1e-10:
            out.append(Y / nrm)
    return out


@lru_cache(maxsize=None)
def build_root_decomposition(n):
    """Construct (and cache) the root space decomposition of su(1, n).

    a = R.H0 with H0 the matrix with ones at (0, 1) and (1, 0); B = H0/2 so
    that ad(B) has eigenvalue 1/2 on g_a.  Root spaces come out of an
    eigendecomposition of the symmetric matrix of ad(B) with snapping
    tolerance TOL_SNAP; the g_a and g_{2a} bases are then replaced by
    deterministic adapted generators inside those eigenspaces.
    """
    n = int(n)
    if n < 2:
        raise ValueError("need n >= 2")
    N1 = n + 1
    I = _signature(n)

    H0 = np.zeros((N1, N1), complex)
    H0[0, 1] = H0[1, 0] = 1.0
    Bmat = H0 / 2.0  # so that ad(B) has eigenvalue 1/2 on g_a
    # the scale is solved from <B, B> = 1, not assumed:
    c = 1.0 / float(np.real(np.trace(Bmat @ Bmat)))
    if abs(c - _METRIC_SCALE) > 1e-14:
        raise ConsistencyError("metric scale disagrees with the module constant")

    raw = _raw_su_basis(n)
    onb_generic = _mgs_matrices(raw, I, c)
    N = len(onb_generic)
    if N != N1 * N1 - 1:
        raise ConsistencyError("orthonormalization lost basis elements")

    adB = np.array(
        [[_ip_raw(Bmat @ F - F @ Bmat, E, I, c) for F in onb_generic] for E in onb_generic]
    )
    if np.abs(adB - adB.T).max() > 1e-10:
        raise ConsistencyError("ad(B) is not symmetric in the orthonormal basis")
    evals, evecs = np.linalg.eigh(adB)

    targets = (-1.0, -0.5, 0.0, 0.5, 1.0)
    groups = {t: [] for t in targets}
    for lam, col in zip(evals, evecs.T):
        best = min(targets, key=lambda t: abs(lam - t))
        if abs(lam - best) > TOL_SNAP:
            raise ConsistencyError(f"ad(B) eigenvalue {lam} is not near a root value")
        groups[best].append(col)

    def group_matrices(t):
        return [
            np.tensordot(col, np.array(onb_generic), axes=(0, 0)) for col in groups[t]
        ]

    g0 = group_matrices(0.0)
    # split g_0 = k_0 + a: k_0 is the theta = +1 part of g_0
    k0_mats = _mgs_matrices([(M + I @ M @ I) / 2 for M in g0], I, c)
    expected = {
        -1.0: 1, -0.5: 2 * n - 2, 0.0: (n - 1) ** 2 + 1, 0.5: 2 * n - 2, 1.0: 1,
    }
    found = {t: len(groups[t]) for t in targets}
    if found != expected or len(k0_mats) != (n - 1) ** 2:
        raise ConsistencyError(f"unexpected root space dimensions: {found}")

    # distinguished g_{2a} generator: <Z, Z> = 2 and J B = Z, the latter
    # realized via the tangent-space complex structure: 2 i B = (1 - theta) Z
    Zmat = np.zeros((N1, N1), complex)
    Zmat[0, 0], Zmat[0, 1], Zmat[1, 0], Zmat[1, 1] = 0.5j, -0.5j, 0.5j, -0.5j
    g2a_num = group_matrices(1.0)[0]
    if np.abs(Zmat / np.sqrt(2) - g2a_num).max() > 1e-6 and \
       np.abs(Zmat / np.sqrt(2) + g2a_num).max() > 1e-6:
        raise ConsistencyError("analytic g_{2a} generator disagrees with eigenspace")
    iB = np.zeros((N1, N1), complex)
    iB[0, 1], iB[1, 0] = -0.5j, 0.5j
    if np.abs(2 * iB - (Zmat - I @ Zmat @ I)).max() > 1e-12:
        raise ConsistencyError("sign of Z violates J B = Z")

    # adapted AN-orthonormal frame of g_a: F_j, J F_j for the standard
    # complex coordinates; J F = -[theta F, Z]
    def galpha_raw(u):
        X = np.zeros((N1, N1), complex)
        X[0, 2:] = np.conj(u)
        X[1, 2:] = np.conj(u)
        X[2:, 0] = u
        X[2:, 1] = -u
        return X

    frame = []
    eye = np.eye(n - 1, dtype=complex)
    for j in range(n - 1):
        F = galpha_raw(eye[j]) / 2.0          # AN-unit: <F, F> = 2
        tF = I @ F @ I
        JF = -(tF @ Zmat - Zmat @ tF)
        frame.append(F)
        frame.append(JF)
    # consistency: frame lies in the ad(B) eigenvalue 1/2 eigenspace
    for F in frame:
        if np.abs((Bmat @ F - F @ Bmat) - 0.5 * F).max() > 1e-10:
            raise ConsistencyError("adapted frame is not in g_a")

    # assemble the global ONB; g_a frame rescaled to <,>-unit
    order = []
    mk = lambda M: AlgElement(n, M, validate=False)
    theta_of = lambda M: I @ M @ I
    galpha_unit = [F / np.sqrt(2) for F in frame]
    g_m2a = [theta_of(Zmat / np.sqrt(2))]
    g_ma = [theta_of(F) for F in galpha_unit]
    blocks = [
        ("g_m2a", g_m2a),
        ("g_ma", g_ma),
        ("k_0", k0_mats),
        ("a", [Bmat]),
        ("g_a", galpha_unit),
        ("g_2a", [Zmat / np.sqrt(2)]),
    ]
    slices = {}
    start = 0
    for name, mats in blocks:
        slices[name] = slice(start, start + len(mats))
        start += len(mats)
        order.extend(mats)
    if start != N:
        raise ConsistencyError("blocks do not fill the algebra")

    gram = np.array([[_ip_raw(X, Y, I, c) for Y in order] for X in order])
    if np.abs(gram - np.eye(N)).max() > 1e-9:
        raise ConsistencyError("global basis is not orthonormal")

    # dual functionals: coords_i(X) = <X, E_i> = -c Re tr(theta(E_i) X)
    dual = np.array([(-c * theta_of(E).T).reshape(-1) for E in order])

    # J matrix on the g_a block (ONB coordinates)
    d = 2 * n - 2
    Jmat = np.zeros((d, d))
    for j in range(d):
        Fj = order[slices["g_a"].start + j]
        tFj = theta_of(Fj)
        JFj = -(tFj @ Zmat - Zmat @ tFj)
        for i in range(d):
            Jmat[i, j] = _ip_raw(JFj, order[slices["g_a"].start + i], I, c)
    if np.abs(Jmat @ Jmat + np.eye(d)).max() > 1e-10:
        raise ConsistencyError("J on g_a does not square to -1")

    rd = RootDecomposition(
        n=n,
        c=c,
        onb=tuple(mk(M) for M in order),
        slices=slices,
        B=mk(Bmat),
        Z=mk(Zmat),
        galpha_frame=tuple(mk(F) for F in frame),
        J_galpha=Jmat,
        _dual=dual,
        _mats=np.array(order),
    )
    _verify_root_decomposition(rd)
    return rd


def _verify_root_decomposition(rd, tol=1e-10):
    """Structural invariants checked once per construction."""
    if abs(inner(rd.B, rd.B) - 1.0) > 1e-12:
        raise ConsistencyError("<B, B> != 1")
    if abs(inner(rd.Z, rd.Z) - 2.0) > 1e-12:
        raise ConsistencyError("<Z, Z> != 2")
    lam = {"g_m2a": -1.0, "g_ma": -0.5, "k_0": 0.0, "a": 0.0, "g_a": 0.5, "g_2a": 1.0}
    for name, want in lam.items():
        for E in rd.block(name):
            r = (bracket(rd.B, E) - want * E).norm()
            if r > tol:
                raise ConsistencyError(f"block {name} is not an ad(B) eigenspace")
    # theta g_lambda = g_{-lambda}
    for pos, neg in (("g_a", "g_ma"), ("g_2a", "g_m2a")):
        for E in rd.block(pos):
            tE = theta(E)
            if (tE - rd.project_block(tE, [neg])).norm() > tol:
                raise ConsistencyError(f"theta does not map {pos} onto {neg}")
