"""State vectors, density matrices and the small linear algebra behind them.

Basis convention: amplitude index ``i`` of an ``n``-qubit state is the ket
``|q1 q2 ... qn>`` read as a binary number with qubit 1 the most significant
bit, so for four qubits index 11 is ``|1011>``.  Qubits are labelled from 1
in every public function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._jacobi import jacobi_eigh
from .errors import (
    BadDimensionError,
    BadLengthError,
    BadSubsetError,
    EntgraphError,
    NotHermitianError,
    NotPSDError,
    NotUnitaryError,
    ZeroVectorError,
)

ZERO_NORM = 1e-9
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-10
PSD_TOL = 1e-8

_N_BY_LENGTH = {4: 2, 8: 3, 16: 4}


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector of 2, 3 or 4 qubits.

    Build one with :func:`normalize` unless the amplitudes are already of
    unit norm.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size not in _N_BY_LENGTH:
            raise BadLengthError(f"expected 4, 8 or 16 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise EntgraphError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise EntgraphError(f"state is not normalized (|psi|^2 = {norm2!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return _N_BY_LENGTH[self.amplitudes.size]

    def tensor(self) -> np.ndarray:
        """Amplitudes as an ``(2,)*n`` array indexed by qubit values."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def __repr__(self):
        return f"PureState(n_qubits={self.n_qubits}, amplitudes={self.amplitudes!r})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on 1 to 4 qubits."""

    data: np.ndarray

    def __post_init__(self):
        m = np.array(self.data, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4, 8, 16):
            raise BadDimensionError(f"bad density matrix shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise EntgraphError("density matrix entries must be finite")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise NotHermitianError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise EntgraphError(f"density matrix trace is {np.trace(m).real!r}, not 1")
        m = 0.5 * (m + m.conj().T)
        if hermitian_eigenvalues(m)[-1] < -CLAMP_TOL:
            raise NotPSDError("density matrix has a negative eigenvalue")
        m.flags.writeable = False
        object.__setattr__(self, "data", m)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_qubits(self) -> int:
        return int(self.dim).bit_length() - 1


def normalize(raw) -> PureState:
    """Scale a nonzero amplitude vector of length 4, 8 or 16 to unit norm."""
    amps = np.asarray(raw, dtype=np.complex128).reshape(-1)
    if amps.size not in _N_BY_LENGTH:
        raise BadLengthError(f"expected 4, 8 or 16 amplitudes, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise EntgraphError("amplitudes must be finite")
    norm = float(np.linalg.norm(amps))
    if norm <= ZERO_NORM:
        raise ZeroVectorError("cannot normalize a zero vector")
    return PureState(amps / norm)


def as_state(psi) -> PureState:
    """Pass a PureState through; normalize anything else."""
    if isinstance(psi, PureState):
        return psi
    return normalize(psi)


def as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.data
    return np.asarray(rho, dtype=np.complex128)


def check_subset(keep: Iterable[int], n_qubits: int, *, proper: bool = True) -> tuple[int, ...]:
    """Validate a 1-based qubit subset and return it sorted."""
    try:
        members = tuple(sorted(int(q) for q in keep))
    except (TypeError, ValueError) as exc:
        raise BadSubsetError(f"bad qubit subset {keep!r}") from exc
    if not members:
        raise BadSubsetError("qubit subset is empty")
    if len(set(members)) != len(members):
        raise BadSubsetError(f"repeated qubit in {members}")
    if members[0] < 1 or members[-1] > n_qubits:
        raise BadSubsetError(f"qubit subset {members} out of range 1..{n_qubits}")
    if proper and len(members) == n_qubits:
        raise BadSubsetError("qubit subset must be a proper subset")
    return members


def density_of(psi) -> DensityMatrix:
    """Projector ``|psi><psi|``."""
    v = as_state(psi).amplitudes
    return DensityMatrix(np.outer(v, v.conj()))


def bipartite_matrix(psi, keep: Sequence[int]) -> np.ndarray:
    """Amplitudes reshaped to ``M[kept, rest]`` so that ``rho_keep = M M^dagger``.

    Kept qubits keep their relative order (lower label more significant).
    """
    psi = as_state(psi)
    keep = check_subset(keep, psi.n_qubits, proper=False)
    return _split_matrix(psi.tensor(), keep)


def _split_matrix(t: np.ndarray, keep: tuple) -> np.ndarray:
    n = t.ndim
    rest = [q for q in range(1, n + 1) if q not in keep]
    axes = [q - 1 for q in keep] + [q - 1 for q in rest]
    return np.transpose(t, axes).reshape(2 ** len(keep), 2 ** len(rest))


def reduced_density(psi, keep: Sequence[int]) -> np.ndarray:
    """Marginal of a pure state on ``keep``, computed from the amplitudes."""
    m = bipartite_matrix(psi, keep)
    rho = m @ m.conj().T
    return 0.5 * (rho + rho.conj().T)


def partial_trace(rho, n_qubits: int, keep: Sequence[int]) -> DensityMatrix:
    """Trace out every qubit not in ``keep``."""
    m = as_matrix(rho)
    if m.shape != (2 ** n_qubits, 2 ** n_qubits):
        raise BadDimensionError(f"matrix shape {m.shape} does not match {n_qubits} qubits")
    keep = check_subset(keep, n_qubits)
    t = m.reshape((2,) * (2 * n_qubits))
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n_qubits])
    col = list(letters[n_qubits:2 * n_qubits])
    for q in range(1, n_qubits + 1):
        if q not in keep:
            col[q - 1] = row[q - 1]
    out = [row[q - 1] for q in keep] + [col[q - 1] for q in keep]
    reduced = np.einsum("".join(row + col) + "->" + "".join(out), t)
    d = 2 ** len(keep)
    reduced = reduced.reshape(d, d)
    return DensityMatrix(0.5 * (reduced + reduced.conj().T))


def purity(rho) -> float:
    """``Tr(rho^2)``."""
    m = as_matrix(rho)
    return float(np.sum(np.abs(m) ** 2))


def linear_entropy(psi, keep: Sequence[int]) -> float:
    """``1 - Tr(rho_keep^2)`` of a pure state, free of cancellation error.

    Uses ``(Tr rho)^2 - Tr(rho^2) = 2 * sum |2x2 minors of M|^2`` with
    ``rho = M M^dagger``, so a product cut gives ~1e-32 instead of ~1e-16.
    """
    return _minor_entropy(bipartite_matrix(psi, keep))


def _minor_entropy(m: np.ndarray) -> float:
    if m.shape[0] > m.shape[1]:
        m = m.T
    # a[i, k, j, l] = m_ij m_kl; every minor appears four times, diagonal ones vanish
    a = m[:, None, :, None] * m[None, :, None, :]
    minors = a - a.transpose(0, 1, 3, 2)
    return 0.5 * float(np.vdot(minors, minors).real)


def _check_hermitian(m: np.ndarray) -> np.ndarray:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise BadDimensionError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise NotHermitianError("matrix is not Hermitian")
    return 0.5 * (m + m.conj().T)


def hermitian_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors (columns) of a Hermitian matrix."""
    return jacobi_eigh(_check_hermitian(as_matrix(m)))


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted in decreasing order."""
    return hermitian_eigh(m)[0]


def hermitian_sqrt(m) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero.
    """
    w, v = hermitian_eigh(m)
    if w.size and w[-1] < -PSD_TOL:
        raise NotPSDError(f"matrix has eigenvalue {w[-1]!r}")
    w = np.where(w < CLAMP_TOL, np.maximum(w, 0.0), w)
    root = (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T
    return 0.5 * (root + root.conj().T)


def apply_local_unitaries(psi, us: Sequence) -> PureState:
    """Apply one 2x2 unitary to each qubit (``us[0]`` acts on qubit 1)."""
    psi = as_state(psi)
    n = psi.n_qubits
    if len(us) != n:
        raise BadDimensionError(f"need {n} single-qubit unitaries, got {len(us)}")
    t = psi.tensor()
    for k, u in enumerate(us):
        u = np.asarray(u, dtype=np.complex128)
        if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
            raise NotUnitaryError(f"operator for qubit {k + 1} is not a 2x2 unitary")
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [k])), 0, k)
    out = t.reshape(-1)
    return PureState(out / np.linalg.norm(out))


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary (QR of a complex Gaussian with phase fix)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    """Normalized complex Gaussian amplitude vector."""
    d = 2 ** n_qubits
    return normalize(rng.standard_normal(d) + 1j * rng.standard_normal(d))


def basis_state(bits: str) -> PureState:
    """``basis_state("1011")`` is ``|1011>``."""
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(bits, 2)] = 1.0
    return PureState(v)
