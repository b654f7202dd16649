"""Entanglement measures of 2-, 3- and 4-qubit pure states.

Two evaluation routes exist for the Wootters concurrence:

* :func:`wootters_concurrence` on a density matrix goes through the spectrum
  of ``sqrt(rho) rho~ sqrt(rho)``, which shares its nonzero eigenvalues with
  the non-Hermitian ``rho rho~``.
* for marginals of pure states (:func:`pair_concurrence`, and 2-qubit
  :class:`PureState` inputs) the square roots of those eigenvalues are
  obtained directly as singular values of ``tau = M^T (Y x Y) M`` where
  ``rho = M M^dagger``.  No square root of a near-zero eigenvalue is ever
  taken, so exact zeros stay at ~1e-16 instead of ~1e-8.

Split concurrences use :func:`entgraph.qcore.linear_entropy` for the same
reason.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
import numpy as np

from ._jacobi import jacobi_eigvalsh
from .errors import BadDimensionError, BadQubitError, BadSubsetError, OutOfRangeError
from .qcore import (
    CLAMP_TOL,
    PureState,
    as_matrix,
    as_state,
    bipartite_matrix,
    check_subset,
    hermitian_eigenvalues,
    hermitian_sqrt,
    linear_entropy,
)
from .qcore import _minor_entropy, _split_matrix

ZERO_SNAP = 1e-10
PURE_EPS = 1e-9

_SY = np.array([[0, -1j], [1j, 0]])
SYSY = np.kron(_SY, _SY).real.astype(np.complex128)


def _snap(x: float, eps: float = ZERO_SNAP) -> float:
    return 0.0 if x < eps else x


@dataclass(frozen=True)
class SchmidtPair:
    """Schmidt coefficients ``alpha >= beta >= 0`` of a two-qubit pure state."""

    alpha: float
    beta: float


@dataclass
class ConcurrenceReport:
    """All measures of one pure state.

    ``pairwise`` is keyed by ``(i, j)`` with ``i < j``; use :meth:`pair` for
    either order.  ``splits`` is keyed by the smaller side of the bipartition
    (``(1,)`` is ``C_{1(rest)}``, ``(1, 2)`` is ``C_{12(34)}``).  ``triples``
    only holds 3-qubit subsets whose marginal is pure.  ``entropies`` holds
    ``1 - Tr rho_S^2`` under the same keys as ``splits``; a subset and its
    complement share the value.
    """

    n_qubits: int
    pairwise: dict
    splits: dict
    global_value: float
    triples: dict = field(default_factory=dict)
    entropies: dict = field(default_factory=dict)

    def pair(self, i: int, j: int) -> float:
        return self.pairwise[(min(i, j), max(i, j))]


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)`` in the computational basis."""
    m = as_matrix(rho)
    if m.shape != (4, 4):
        raise BadDimensionError(f"spin flip needs a 4x4 matrix, got {m.shape}")
    return SYSY @ m.conj() @ SYSY


def rho_tilde_spectrum(rho) -> np.ndarray:
    """Eigenvalues of ``rho rho~`` (descending), via ``sqrt(rho) rho~ sqrt(rho)``."""
    m = as_matrix(rho)
    if m.shape != (4, 4):
        raise BadDimensionError(f"expected a two-qubit density matrix, got {m.shape}")
    root = hermitian_sqrt(m)
    r = root @ spin_flip(m) @ root
    lam = hermitian_eigenvalues(0.5 * (r + r.conj().T))
    return np.where(np.abs(lam) < CLAMP_TOL, np.maximum(lam, 0.0), lam)


def _takagi_singular_values(tau: np.ndarray) -> np.ndarray:
    # eigenvalues of [[0, tau], [tau^H, 0]] are +-s_i; absolute accuracy ~eps
    k = tau.shape[0]
    if k == 1:
        return np.array([abs(tau[0, 0])])
    aug = np.zeros((2 * k, 2 * k), dtype=np.complex128)
    aug[:k, k:] = tau
    aug[k:, :k] = tau.conj().T
    return np.maximum(jacobi_eigvalsh(aug)[:k], 0.0)


def concurrence_from_factor(m: np.ndarray) -> float:
    """Concurrence of ``rho = m m^dagger`` for a 4 x r factor ``m`` (unsnapped)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.shape[0] != 4:
        raise BadDimensionError(f"factor must have 4 rows, got {m.shape}")
    tau = m.T @ SYSY @ m
    tau = 0.5 * (tau + tau.T)
    s = _takagi_singular_values(tau)
    c = s[0] - s[1:].sum() if s.size > 1 else s[0]
    return max(0.0, float(c))


def wootters_concurrence(rho) -> float:
    """Two-qubit concurrence ``max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))``.

    Accepts a 4x4 density matrix or a two-qubit :class:`PureState`; the latter
    is evaluated through its amplitude factor.  Results below 1e-10 are 0.
    """
    if isinstance(rho, PureState):
        if rho.n_qubits != 2:
            raise BadDimensionError("pure-state input must have two qubits")
        return _snap(concurrence_from_factor(rho.amplitudes.reshape(4, 1)))
    lam = rho_tilde_spectrum(rho)
    roots = np.sqrt(np.maximum(lam, 0.0))
    return _snap(max(0.0, float(roots[0] - roots[1:].sum())))


def pair_concurrence(psi, i: int, j: int) -> float:
    """Concurrence of the marginal of qubits ``i, j`` of a pure state (unsnapped)."""
    psi = as_state(psi)
    pair = check_subset((i, j), psi.n_qubits, proper=False)
    if len(pair) != 2:
        raise BadSubsetError(f"need two distinct qubits, got {(i, j)}")
    return concurrence_from_factor(bipartite_matrix(psi, pair))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def eof(c: float) -> float:
    """Entanglement of formation of a two-qubit state with concurrence ``c``."""
    if not 0.0 <= c <= 1.0:
        raise OutOfRangeError(f"concurrence {c!r} outside [0, 1]")
    return binary_entropy(0.5 + 0.5 * math.sqrt(1.0 - c * c))


def schmidt2(psi) -> SchmidtPair:
    """Schmidt coefficients of a two-qubit pure state.

    Singular values of the 2x2 amplitude matrix from ``s1^2 + s2^2 = 1`` and
    ``s1 s2 = |det M|``; the small one is taken as ``|det M| / s1`` so it
    keeps full relative accuracy.
    """
    psi = as_state(psi)
    if psi.n_qubits != 2:
        raise BadDimensionError("schmidt2 needs a two-qubit state")
    m = psi.amplitudes.reshape(2, 2)
    det = abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    fro = float(np.sum(np.abs(m) ** 2))
    alpha = 0.5 * (math.sqrt(fro + 2 * det) + math.sqrt(max(fro - 2 * det, 0.0)))
    beta = det / alpha
    return SchmidtPair(alpha, beta)


def split_concurrence_1vrest(psi, a: int) -> float:
    """``sqrt(2 (1 - Tr rho_a^2))`` for one qubit against the rest."""
    psi = as_state(psi)
    if not 1 <= int(a) <= psi.n_qubits:
        raise BadQubitError(f"qubit {a} out of range 1..{psi.n_qubits}")
    return math.sqrt(2.0 * linear_entropy(psi, (int(a),)))


split_concurrence_1v3 = split_concurrence_1vrest


def split_concurrence_2v2(psi, pair) -> float:
    """``sqrt(4/3 (1 - Tr rho_AB^2))`` for a four-qubit state."""
    psi = as_state(psi)
    if psi.n_qubits != 4:
        raise BadDimensionError("2-vs-2 split needs four qubits")
    pair = check_subset(pair, 4)
    if len(pair) != 2:
        raise BadSubsetError(f"need exactly two qubits, got {pair}")
    return math.sqrt(4.0 / 3.0 * linear_entropy(psi, pair))


def _geometric_mean(factors, zero_eps: float) -> float:
    if any(f <= zero_eps for f in factors):
        return 0.0
    return float(np.exp(np.mean(np.log(factors))))


def tri_concurrence(psi, zero_eps: float = ZERO_SNAP) -> float:
    """Cube root of the product of the three one-vs-two split concurrences.

    Factors at or below ``zero_eps`` count as exact zeros; otherwise a
    rounding-level factor would surface as a large cube root.
    """
    psi = as_state(psi)
    if psi.n_qubits != 3:
        raise BadDimensionError("tri_concurrence needs three qubits")
    return _geometric_mean([split_concurrence_1vrest(psi, q) for q in (1, 2, 3)], zero_eps)


def four_concurrence(psi, zero_eps: float = ZERO_SNAP) -> float:
    """Seventh root of the product of the four 1-vs-3 and three 2-vs-2 splits."""
    psi = as_state(psi)
    if psi.n_qubits != 4:
        raise BadDimensionError("four_concurrence needs four qubits")
    factors = [split_concurrence_1vrest(psi, q) for q in (1, 2, 3, 4)]
    factors += [split_concurrence_2v2(psi, p) for p in ((1, 2), (1, 3), (1, 4))]
    return _geometric_mean(factors, zero_eps)


def full_report(psi, raw: bool = False, purity_eps: float = PURE_EPS) -> ConcurrenceReport:
    """Every pairwise, split and global measure of ``psi``.

    With ``raw=False`` values below 1e-10 are reported as exactly 0.
    """
    psi = as_state(psi)
    n = psi.n_qubits
    t = psi.tensor()
    snap = (lambda x: x) if raw else _snap
    zero_eps = 0.0 if raw else ZERO_SNAP

    pairwise = {
        pair: snap(concurrence_from_factor(_split_matrix(t, pair)))
        for pair in itertools.combinations(range(1, n + 1), 2)
    }
    entropies = {(q,): _minor_entropy(_split_matrix(t, (q,))) for q in range(1, n + 1)}
    singles = {q: math.sqrt(2.0 * entropies[(q,)]) for q in range(1, n + 1)}
    splits = {(q,): snap(v) for q, v in singles.items()}
    triples: dict = {}
    if n == 2:
        global_value = pairwise[(1, 2)]
        splits = {(1,): splits[(1,)]}
        entropies = {(1,): entropies[(1,)]}
    elif n == 3:
        global_value = snap(_geometric_mean(list(singles.values()), zero_eps))
    else:
        factors = list(singles.values())
        for p in ((1, 2), (1, 3), (1, 4)):
            entropies[p] = _minor_entropy(_split_matrix(t, p))
            value = math.sqrt(4.0 / 3.0 * entropies[p])
            factors.append(value)
            splits[p] = snap(value)
        global_value = snap(_geometric_mean(factors, zero_eps))
        for triple in itertools.combinations(range(1, 5), 3):
            (left_out,) = set(range(1, 5)) - set(triple)
            if entropies[(left_out,)] <= purity_eps:
                # triple is a tensor factor: its one-qubit marginals are ours
                value = _geometric_mean([singles[q] for q in triple], zero_eps)
                triples[triple] = snap(value)
    return ConcurrenceReport(n, pairwise, splits, global_value, triples, entropies)


def global_concurrence(psi) -> float:
    """Tri- or four-partite concurrence depending on the qubit count."""
    psi = as_state(psi)
    if psi.n_qubits == 3:
        return tri_concurrence(psi)
    if psi.n_qubits == 4:
        return four_concurrence(psi)
    raise BadDimensionError("global concurrence needs three or four qubits")

