import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, ket
from entgraph.errors import (
    BadDimensionError,
    BadLengthError,
    BadSubsetError,
    EntgraphError,
    NotHermitianError,
    NotPSDError,
    NotUnitaryError,
    ZeroVectorError,
)
from entgraph.qcore import (
    DensityMatrix,
    PureState,
    apply_local_unitaries,
    basis_state,
    bipartite_matrix,
    density_of,
    hermitian_eigenvalues,
    hermitian_sqrt,
    linear_entropy,
    normalize,
    partial_trace,
    purity,
    random_state,
    random_unitary,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2)

amplitude = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def states(n):
    return st.lists(amplitude, min_size=2 ** n, max_size=2 ** n).filter(
        lambda v: np.linalg.norm(v) > 1e-3
    ).map(normalize)


any_state = st.sampled_from([2, 3, 4]).flatmap(states)


# normalize / PureState

def test_normalize_keeps_unit_vector():
    psi = normalize([1, 0, 0, 0])
    assert np.allclose(psi.amplitudes, [1, 0, 0, 0])
    assert psi.n_qubits == 2


def test_normalize_scales():
    psi = normalize([2, 0, 0, 2])
    assert np.allclose(psi.amplitudes, [R2, 0, 0, R2], atol=1e-15)


def test_normalize_zero_vector():
    with pytest.raises(ZeroVectorError):
        normalize([0, 0, 0, 0])


@pytest.mark.parametrize("length", [1, 2, 3, 5, 7, 32])
def test_bad_lengths(length):
    with pytest.raises(BadLengthError):
        normalize(np.ones(length))


def test_rejects_nan():
    with pytest.raises(EntgraphError):
        normalize([1, np.nan, 0, 0])


def test_pure_state_requires_unit_norm():
    with pytest.raises(EntgraphError):
        PureState(np.array([1, 1, 0, 0]))


def test_amplitudes_read_only():
    psi = normalize([1, 0, 0, 0])
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 2


def test_index_convention():
    # index 11 = 0b1011 = |1011>, qubit 1 most significant
    psi = basis_state("1011")
    assert psi.amplitudes[11] == 1
    t = psi.tensor()
    assert t[1, 0, 1, 1] == 1


@given(any_state)
def test_normalized_within_tolerance(psi):
    assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - 1) <= 1e-12


# density matrices

def test_density_of_product():
    rho = density_of(basis_state("00"))
    assert np.allclose(rho.data, np.diag([1, 0, 0, 0]))


def test_density_of_bell():
    rho = density_of(ket(2, _00=1, _11=1)).data
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    assert np.allclose(rho, expected)


@given(any_state)
def test_projector_purity_one(psi):
    assert purity(density_of(psi)) == pytest.approx(1, abs=1e-12)


def test_density_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))


def test_density_rejects_negative():
    with pytest.raises(NotPSDError):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_density_rejects_bad_shape():
    with pytest.raises(BadDimensionError):
        DensityMatrix(np.eye(3) / 3)


def test_density_rejects_bad_trace():
    with pytest.raises(EntgraphError):
        DensityMatrix(np.eye(2))


# partial trace

def test_bell_marginal_maximally_mixed():
    rho = density_of(ket(2, _00=1, _11=1))
    assert np.allclose(partial_trace(rho, 2, [1]).data, np.eye(2) / 2)


def test_pure_first_qubit_marginal():
    # |1> (x) (eps|000> + omega|111>)
    psi = ket(4, _1000=0.6, _1111=0.8)
    assert np.allclose(partial_trace(density_of(psi), 4, [1]).data, np.diag([0, 1]))


def test_ghz4_pair_marginal_matches_brute_force():
    a, w = 0.6, 0.8
    psi = ket(4, _0000=a, _1111=w)
    got = partial_trace(density_of(psi), 4, [1, 2]).data
    assert np.allclose(got, np.diag([a * a, 0, 0, w * w]))
    # brute-force index contraction over the full projector
    rho = density_of(psi).data
    brute = np.zeros((4, 4), dtype=complex)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        for r in itertools.product(range(2), repeat=2):
            row = int(f"{i}{j}{r[0]}{r[1]}", 2)
            col = int(f"{k}{l}{r[0]}{r[1]}", 2)
            brute[2 * i + j, 2 * k + l] += rho[row, col]
    assert np.allclose(got, brute, atol=1e-15)


@pytest.mark.parametrize("keep", [[], [0], [5], [1, 1], [1, 2, 3, 4]])
def test_partial_trace_bad_subsets(keep):
    rho = density_of(basis_state("0000"))
    with pytest.raises(BadSubsetError):
        partial_trace(rho, 4, keep)


def test_partial_trace_shape_mismatch():
    with pytest.raises(BadDimensionError):
        partial_trace(np.eye(4) / 4, 3, [1])


@settings(max_examples=40)
@given(states(4), st.data())
def test_partial_trace_composes(psi, data):
    rho = density_of(psi)
    keep = sorted(data.draw(st.lists(st.integers(1, 4), min_size=2, max_size=3, unique=True)))
    inner = sorted(data.draw(st.lists(st.sampled_from(keep), min_size=1, max_size=len(keep) - 1, unique=True)))
    once = partial_trace(rho, 4, inner).data
    # positions of `inner` within `keep`
    pos = [keep.index(q) + 1 for q in inner]
    twice = partial_trace(partial_trace(rho, 4, keep), len(keep), pos).data
    assert np.allclose(once, twice, atol=1e-12)


@settings(max_examples=40)
@given(any_state, st.data())
def test_complementary_marginals_share_purity(psi, data):
    n = psi.n_qubits
    keep = sorted(data.draw(st.lists(st.integers(1, n), min_size=1, max_size=n - 1, unique=True)))
    rest = [q for q in range(1, n + 1) if q not in keep]
    rho = density_of(psi)
    assert purity(partial_trace(rho, n, keep)) == pytest.approx(purity(partial_trace(rho, n, rest)), abs=1e-12)


@settings(max_examples=40)
@given(any_state, st.data())
def test_linear_entropy_matches_purity(psi, data):
    n = psi.n_qubits
    keep = sorted(data.draw(st.lists(st.integers(1, n), min_size=1, max_size=n - 1, unique=True)))
    rho = partial_trace(density_of(psi), n, keep)
    assert linear_entropy(psi, keep) == pytest.approx(1 - purity(rho), abs=1e-12)


def test_linear_entropy_of_product_cut_is_tiny():
    psi = normalize(np.kron([0.3, 0.7j], np.kron([0.1, 0.9], [1, 2 - 1j])))
    assert linear_entropy(psi, [1]) < 1e-30


def test_bipartite_matrix_orientation():
    psi = basis_state("100")
    m = bipartite_matrix(psi, [1])
    assert m.shape == (2, 4)
    assert m[1, 0] == 1


# purity

@pytest.mark.parametrize("m, expected", [
    (np.diag([1.0, 0.0]), 1.0),
    (np.eye(2) / 2, 0.5),
    (np.diag([0.5, 0.5]), 0.5),
])
def test_purity(m, expected):
    assert purity(DensityMatrix(m)) == pytest.approx(expected)


# hermitian eigenvalues and square root

def test_eigenvalues_identity():
    assert np.allclose(hermitian_eigenvalues(np.eye(4)), [1, 1, 1, 1])


def test_eigenvalues_sorted():
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, 1, 2, 0])), [3, 2, 1, 0])


def test_eigenvalues_by_hand():
    assert np.allclose(hermitian_eigenvalues(np.array([[2.0, 1], [1, 2]])), [3, 1], atol=1e-14)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[1, 2], [0, 1]]))


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_eigenvalues_match_numpy(dim, seed):
    g = np.random.default_rng(seed)
    a = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    h = a + a.conj().T
    assert np.allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h)[::-1], atol=1e-12)


def test_sqrt_examples():
    assert np.allclose(hermitian_sqrt(np.diag([4.0, 1.0])), np.diag([2, 1]))
    assert np.allclose(hermitian_sqrt(np.eye(4)), np.eye(4))
    v = np.array([0.6, 0.8j])
    p = np.outer(v, v.conj())
    assert np.allclose(hermitian_sqrt(p), p, atol=1e-12)


def test_sqrt_clamps_noise_and_rejects_negative():
    assert np.allclose(hermitian_sqrt(np.diag([1.0, -1e-11])), np.diag([1, 0]))
    with pytest.raises(NotPSDError):
        hermitian_sqrt(np.diag([1.0, -0.1]))


@settings(max_examples=30)
@given(st.integers(0, 2 ** 32 - 1))
def test_sqrt_squares_back(seed):
    g = np.random.default_rng(seed)
    a = g.standard_normal((4, 4)) + 1j * g.standard_normal((4, 4))
    p = a @ a.conj().T
    r = hermitian_sqrt(p)
    assert np.allclose(r @ r, p, atol=1e-10)


# local unitaries

def test_identity_unitaries():
    psi = ket(3, _000=1, _011=2j, _101=-1)
    assert np.allclose(apply_local_unitaries(psi, [I2] * 3).amplitudes, psi.amplitudes)


def test_bit_flip_first_qubit():
    out = apply_local_unitaries(basis_state("00"), [X, I2])
    assert np.allclose(out.amplitudes, basis_state("10").amplitudes)


def test_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        apply_local_unitaries(basis_state("00"), [2 * I2, I2])
    with pytest.raises(BadDimensionError):
        apply_local_unitaries(basis_state("00"), [I2])


def test_local_unitary_matches_kron(rng):
    psi = random_state(3, rng)
    us = [random_unitary(rng) for _ in range(3)]
    full = np.kron(us[0], np.kron(us[1], us[2]))
    assert np.allclose(apply_local_unitaries(psi, us).amplitudes, full @ psi.amplitudes, atol=1e-14)


def test_random_unitary_is_unitary(rng):
    for _ in range(20):
        u = random_unitary(rng)
        assert np.allclose(u.conj().T @ u, I2, atol=1e-14)


def test_python_fallback_matches_compiled(rng):
    from entgraph._jacobi import _jacobi_kernel

    kernel = getattr(_jacobi_kernel, "py_func", _jacobi_kernel)
    for dim in (2, 4, 8):
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        h = a + a.conj().T
        d, v, ok = kernel(h, 1e-14, 50, True)
        assert ok
        assert np.allclose(v @ np.diag(np.diagonal(d)) @ v.conj().T, h, atol=1e-12)
        assert np.allclose(np.sort(np.diagonal(d).real), np.linalg.eigvalsh(h), atol=1e-12)
