"""Shared fixtures: dense Kronecker oracles and reference states.

The oracle here deliberately builds explicit 2**L x 2**L matrices with
np.kron, independent of the bitmask fast paths it is used to check.
"""

import numpy as np
import pytest

PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli_matrix(letters: str) -> np.ndarray:
    """Dense matrix of a Pauli string; letters[0] is site 1 (lowest bit)."""
    m = np.array([[1.0 + 0j]])
    for letter in letters:
        m = np.kron(PAULI_MATRICES[letter], m)
    return m


def dense_hamiltonian(terms, length: int) -> np.ndarray:
    """Dense matrix of a weighted Pauli-term list via the Kronecker oracle."""
    dim = 1 << length
    h = np.zeros((dim, dim), dtype=np.complex128)
    for coef, string in terms:
        h += coef * pauli_matrix(string.letters())
    return h


def haar_state(length: int, rng: np.random.Generator) -> np.ndarray:
    """Unnormalized Haar-like random amplitudes (normalize at use site)."""
    dim = 1 << length
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


def ghz_amplitudes(length: int) -> np.ndarray:
    amp = np.zeros(1 << length, dtype=np.complex128)
    amp[0] = amp[-1] = 1 / np.sqrt(2)
    return amp


def plus_all_amplitudes(length: int) -> np.ndarray:
    dim = 1 << length
    return np.full(dim, 1 / np.sqrt(dim), dtype=np.complex128)


def cluster_state_amplitudes(length: int) -> np.ndarray:
    """Open-chain cluster state: CZ on every bond applied to |+...+>."""
    dim = 1 << length
    b = np.arange(dim)
    signs = np.ones(dim)
    for i in range(length - 1):
        both = ((b >> i) & 1) & ((b >> (i + 1)) & 1)
        signs *= 1.0 - 2.0 * both
    return (signs / np.sqrt(dim)).astype(np.complex128)


def single_qubit_cliffords() -> list[np.ndarray]:
    """All 24 single-qubit Cliffords up to global phase, by closure of H, S."""
    had = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    s_gate = np.diag([1, 1j]).astype(np.complex128)

    def canon(u):
        u = u.copy()
        flat = u.ravel()
        k = np.argmax(np.abs(flat) > 1e-9)
        u *= np.conj(flat[k]) / np.abs(flat[k])
        return np.round(u, 12)

    seen = {}
    frontier = [np.eye(2, dtype=np.complex128)]
    seen[canon(frontier[0]).tobytes()] = frontier[0]
    while frontier:
        u = frontier.pop()
        for g in (had, s_gate):
            v = g @ u
            key = canon(v).tobytes()
            if key not in seen:
                seen[key] = v
                frontier.append(v)
    gates = list(seen.values())
    assert len(gates) == 24
    return gates


@pytest.fixture(scope="session")
def cliffords():
    return single_qubit_cliffords()
