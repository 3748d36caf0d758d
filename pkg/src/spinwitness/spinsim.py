"""Small-N exact checks with explicit spin matrices.

Operators are built sparse in the product z-basis (site 0 is the most
significant tensor factor) and returned dense. Spectra are computed block by
block in sectors of fixed total ``J_z``, which commutes with both ``W`` and
the Heisenberg chain.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sp

from spinwitness.errors import CapExceededError, ClusteringError, InvalidArgumentError

DEFAULT_DIM_CAP = 4096
CLUSTER_TOL = 1e-6
MC_CHUNK = 4096


def single_spin_matrices(s: int):
    """``(Sx, Sy, Sz)`` for spin ``s/2`` in the basis ``m = s/2, s/2-1, ..., -s/2``."""
    if s < 1:
        raise InvalidArgumentError("need spin >= 1/2")
    j = s / 2
    m = j - np.arange(s + 1)
    sp_ = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), 1)
    sx = (sp_ + sp_.T) / 2
    sy = (sp_ - sp_.T) / 2j
    sz = np.diag(m)
    return sx.astype(complex), sy, sz.astype(complex)


def _check_dim(s: int, N: int, cap: int) -> int:
    if N < 1:
        raise InvalidArgumentError("need N >= 1")
    dim = (s + 1) ** N
    if dim > cap:
        raise CapExceededError(f"Hilbert space dimension {dim} exceeds cap {cap}")
    return dim


def site_operator(op: np.ndarray, k: int, N: int) -> sp.csr_matrix:
    d = op.shape[0]
    parts = [sp.identity(d ** k, format="csr"), sp.csr_matrix(op), sp.identity(d ** (N - k - 1), format="csr")]
    return reduce(lambda a, b: sp.kron(a, b, format="csr"), parts)


@dataclass
class SpinOperators:
    """Embedded single-site spin operators ``sites[a][k]`` and totals ``J[a]`` for a = x, y, z."""

    s: int
    N: int
    sites: list[list[sp.csr_matrix]]
    J: list[sp.csr_matrix]

    @classmethod
    def build(cls, s: int, N: int, cap: int = DEFAULT_DIM_CAP) -> SpinOperators:
        _check_dim(s, N, cap)
        local = single_spin_matrices(s)
        sites = [[site_operator(op, k, N) for k in range(N)] for op in local]
        J = [reduce(lambda a, b: a + b, row) for row in sites]
        return cls(s, N, sites, J)

    def witness(self) -> sp.csr_matrix:
        return sum(j @ j for j in self.J)

    def heisenberg(self, coupling: float, periodic: bool = True) -> sp.csr_matrix:
        bonds = range(self.N) if periodic else range(self.N - 1)
        dim = (self.s + 1) ** self.N
        h = sp.csr_matrix((dim, dim), dtype=complex)
        for k in bonds:
            k1 = (k + 1) % self.N
            for a in range(3):
                h = h + self.sites[a][k] @ self.sites[a][k1]
        return 0.5 * coupling * h

    def twice_mz(self) -> np.ndarray:
        """Total ``2 J_z`` on each product basis state."""
        return np.rint(2 * self.J[2].diagonal().real).astype(int)


def _real_dense(m: sp.spmatrix, what: str) -> np.ndarray:
    a = m.toarray()
    if np.abs(a.imag).max(initial=0.0) > 1e-12:
        raise AssertionError(f"{what} is not real in the product z-basis")
    a = a.real
    if np.abs(a - a.T).max(initial=0.0) > 1e-12:
        raise AssertionError(f"{what} is not symmetric")
    return a


def total_witness(s: int, N: int, cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """``W = Jx^2 + Jy^2 + Jz^2`` as a dense real symmetric matrix."""
    return _real_dense(SpinOperators.build(s, N, cap).witness(), "W")


def heisenberg_chain(s: int, N: int, coupling: float = 1.0, periodic: bool = True,
                     cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """``(coupling/2) sum_k s^k . s^{k+1}``; periodic chains include the bond (N, 1)."""
    return _real_dense(SpinOperators.build(s, N, cap).heisenberg(coupling, periodic), "H_L")


def witness_spectrum(s: int, N: int, cap: int = DEFAULT_DIM_CAP) -> tuple[dict[int, int], float]:
    """Eigenvalue counts of W keyed by twice-spin, and the worst distance to ``j(j+1)``."""
    ops = SpinOperators.build(s, N, cap)
    W = ops.witness().tocsr()
    mz = ops.twice_mz()
    counts: Counter[int] = Counter()
    worst = 0.0
    for m in np.unique(mz):
        idx = np.flatnonzero(mz == m)
        block = _real_dense(W[idx][:, idx], "W block")
        ev = np.linalg.eigvalsh(block)
        t = np.rint(np.sqrt(1 + 4 * np.clip(ev, 0, None)) - 1).astype(int)  # 2j
        resid = np.abs(ev - t * (t + 2) / 4)
        if resid.max() > CLUSTER_TOL:
            raise ClusteringError(f"eigenvalue {ev[resid.argmax()]} is not of the form j(j+1)")
        worst = max(worst, float(resid.max()))
        counts.update(t.tolist())
    return dict(sorted(counts.items())), worst


def spectrum_degeneracies(s: int, N: int, cap: int = DEFAULT_DIM_CAP) -> dict[int, int]:
    return witness_spectrum(s, N, cap)[0]


@dataclass
class ProductState:
    locals: np.ndarray  # (N, 2s+1) complex, rows normalized

    def __post_init__(self):
        self.locals = np.asarray(self.locals, dtype=complex)
        norms = np.linalg.norm(self.locals, axis=1)
        if np.abs(norms - 1).max() > 1e-12:
            raise InvalidArgumentError("local states must have unit norm")

    @property
    def N(self) -> int:
        return self.locals.shape[0]

    @property
    def s(self) -> int:
        return self.locals.shape[1] - 1

    def vector(self) -> np.ndarray:
        return reduce(np.kron, self.locals)


def haar_local_states(rng: np.random.Generator, shape: tuple[int, ...], dim: int) -> np.ndarray:
    z = rng.standard_normal((*shape, dim)) + 1j * rng.standard_normal((*shape, dim))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def random_product_state(s: int, N: int, rng: np.random.Generator) -> ProductState:
    return ProductState(haar_local_states(rng, (N,), s + 1))


def bloch_vectors(local: np.ndarray, s: int) -> np.ndarray:
    """``(<Sx>, <Sy>, <Sz>)`` for each local state along the last-but-one axis."""
    ops = single_spin_matrices(s)
    return np.stack([np.einsum("...i,ij,...j->...", local.conj(), op, local).real for op in ops], axis=-1)


def _witness_from_bloch(v: np.ndarray, s: int) -> np.ndarray:
    N = v.shape[-2]
    total = v.sum(axis=-2)
    return N * (s / 2) * (s / 2 + 1) + np.sum(total**2, axis=-1) - np.sum(v**2, axis=(-1, -2))


def product_state_witness_value(state: ProductState, s: int | None = None) -> float:
    """``<W>`` from single-site Bloch vectors: ``N s(s+1) + |sum v|^2 - sum |v|^2``."""
    s = state.s if s is None else s
    return float(_witness_from_bloch(bloch_vectors(state.locals, s), s))


def dense_expectation(op: np.ndarray, psi: np.ndarray) -> float:
    return float(np.real(np.vdot(psi, op @ psi)))


def separable_bound_mc(s: int, N: int, trials: int, seed: int = 0) -> tuple[float, ProductState]:
    """Minimum ``<W>`` over ``trials`` Haar-random product states.

    Trials are drawn in chunks of MC_CHUNK, each chunk from its own child of
    ``SeedSequence(seed)``, so the result does not depend on how chunks are scheduled.
    """
    if trials < 1:
        raise InvalidArgumentError("need trials >= 1")
    n_chunks = -(-trials // MC_CHUNK)
    best, best_state = np.inf, None
    for c, child in enumerate(np.random.SeedSequence(seed).spawn(n_chunks)):
        size = min(MC_CHUNK, trials - c * MC_CHUNK)
        local = haar_local_states(np.random.default_rng(child), (size, N), s + 1)
        vals = _witness_from_bloch(bloch_vectors(local, s), s)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best, best_state = float(vals[i]), ProductState(local[i])
    return best, best_state


def _comm(a, b):
    return a @ b - b @ a


def commutator_expansion(ops: SpinOperators, coupling: float, periodic: bool = True) -> sp.csr_matrix:
    """``i J sum_i ([Jx, sy^i sz^{i+1}] + [Jy, sz^i sx^{i+1}] + [Jz, sx^i sy^{i+1}])``."""
    x, y, z = ops.sites
    Jx, Jy, Jz = ops.J
    bonds = range(ops.N) if periodic else range(ops.N - 1)
    out = None
    for i in bonds:
        i1 = (i + 1) % ops.N
        term = _comm(Jx, y[i] @ z[i1]) + _comm(Jy, z[i] @ x[i1]) + _comm(Jz, x[i] @ y[i1])
        out = term if out is None else out + term
    return 1j * coupling * out


@dataclass
class CommutatorReport:
    s: int
    N: int
    coupling: float
    periodic: bool
    seed: int
    identity_deviation: float  # max |[H_L, W] - rhs| entrywise
    commutator_max_entry: float
    rhs_max_entry: float
    ground_energy: float
    ground_witness: float
    ground_norm: float
    random_norm: float
    stretched_norm: float
    ratio: float = field(init=False)

    def __post_init__(self):
        self.ratio = self.ground_norm / self.random_norm if self.random_norm > 0 else float("nan")

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def commutator_check(s: int, N: int, coupling: float = 1.0, periodic: bool = True, seed: int = 0,
                     cap: int = DEFAULT_DIM_CAP) -> CommutatorReport:
    """Compare ``[H_L, W]`` with its nested-commutator expansion and probe it on three states."""
    ops = SpinOperators.build(s, N, cap)
    H = ops.heisenberg(coupling, periodic)
    W = ops.witness()
    C = (H @ W - W @ H).toarray()
    R = commutator_expansion(ops, coupling, periodic).toarray()
    Hd = H.toarray()
    evals, evecs = np.linalg.eigh(Hd)
    ground = evecs[:, 0]
    rng = np.random.default_rng(seed)
    dim = Hd.shape[0]
    rand = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    rand /= np.linalg.norm(rand)
    stretched = np.zeros(dim, dtype=complex)
    stretched[0] = 1.0  # all sites at m = +s
    return CommutatorReport(
        s=s, N=N, coupling=coupling, periodic=periodic, seed=seed,
        identity_deviation=float(np.abs(C - R).max()),
        commutator_max_entry=float(np.abs(C).max()),
        rhs_max_entry=float(np.abs(R).max()),
        ground_energy=float(evals[0]),
        ground_witness=dense_expectation(W.toarray(), ground),
        ground_norm=float(np.linalg.norm(C @ ground)),
        random_norm=float(np.linalg.norm(C @ rand)),
        stretched_norm=float(np.linalg.norm(C @ stretched)),
    )
