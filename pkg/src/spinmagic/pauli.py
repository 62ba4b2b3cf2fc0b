"""Bitmask Pauli strings and their action on dense state vectors.

Conventions (frozen; CSV indices and chain diagnostics depend on them):

* An L-site Pauli string is stored as two L-bit masks.  Bit ``i`` of a mask
  refers to site ``i + 1`` of the chain (bit 0 = site 1).  The letter on a
  site is read off the pair ``(x_i, z_i)``: (0,0) identity, (1,0) X,
  (1,1) Y, (0,1) Z.
* The operator actually applied is ``i**n_y * X(x_mask) * Z(z_mask)`` where
  ``n_y`` counts sites carrying both bits.  Since ``Y = i X Z``, this equals
  the Hermitian tensor product of the per-site letters, so expectation
  values of any string are real.
* Computational-basis index ``b`` of an amplitude: bit ``i`` of ``b`` is the
  z-basis state of site ``i + 1`` (0 -> |0>, z-eigenvalue +1).
* ``index(P) = x_mask * 2**L + z_mask`` enumerates all ``4**L`` strings;
  enumeration order is increasing index.
"""

from dataclasses import dataclass

import numpy as np

# Exhaustive enumeration stays comfortably inside 64-bit index arithmetic.
MAX_ENUMERATION_SITES = 16

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}


@dataclass(frozen=True)
class PauliString:
    """One Hermitian L-site Pauli operator, encoded as two L-bit masks."""

    x_mask: int
    z_mask: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        top = 1 << self.length
        if not (0 <= self.x_mask < top and 0 <= self.z_mask < top):
            raise ValueError(
                f"masks must fit in {self.length} bits: "
                f"x={self.x_mask:#x} z={self.z_mask:#x}"
            )

    @property
    def index(self) -> int:
        """Position in the global enumeration: x_mask * 2**L + z_mask."""
        return self.x_mask * (1 << self.length) + self.z_mask

    @classmethod
    def from_index(cls, index: int, length: int) -> "PauliString":
        dim = 1 << length
        if not 0 <= index < dim * dim:
            raise ValueError(f"index {index} outside [0, 4**{length})")
        return cls(index // dim, index % dim, length)

    @property
    def y_count(self) -> int:
        """Number of sites carrying a Y letter."""
        return (self.x_mask & self.z_mask).bit_count()

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x_mask | self.z_mask).bit_count()

    def letters(self) -> str:
        """Per-site letters, site 1 first."""
        return "".join(
            _BITS_TO_LETTER[(self.x_mask >> i) & 1, (self.z_mask >> i) & 1]
            for i in range(self.length)
        )

    def __str__(self) -> str:
        return self.letters()


def make_pauli(letters) -> PauliString:
    """Build a PauliString from per-site letters (site 1 first).

    ``letters`` may be a string like ``"ZIX"`` or any sequence of the
    characters I, X, Y, Z.
    """
    seq = list(letters)
    if len(seq) < 1:
        raise ValueError("need at least one site")
    x_mask = 0
    z_mask = 0
    for i, letter in enumerate(seq):
        try:
            xb, zb = _LETTER_TO_BITS[letter]
        except KeyError:
            raise ValueError(
                f"invalid Pauli letter {letter!r} at site {i + 1}"
            ) from None
        x_mask |= xb << i
        z_mask |= zb << i
    return PauliString(x_mask, z_mask, len(seq))


def enumerate_paulis(length: int):
    """Yield all 4**L Pauli strings in increasing index order.

    The order is part of the external contract: chunked parallel consumers
    split the index range [0, 4**L) and rely on it.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if length > MAX_ENUMERATION_SITES:
        raise ValueError(
            f"exhaustive enumeration guard: L={length} exceeds "
            f"{MAX_ENUMERATION_SITES}"
        )
    dim = 1 << length
    for x_mask in range(dim):
        for z_mask in range(dim):
            yield PauliString(x_mask, z_mask, length)


class StateVector:
    """Normalized complex amplitude vector over the computational basis.

    Basis index ``b``: bit i of b is the z-basis state of site i+1.
    Amplitudes are frozen after construction; the constructor normalizes.
    """

    __slots__ = ("amplitudes", "length")

    def __init__(self, amplitudes, length: int | None = None):
        amp = np.asarray(amplitudes, dtype=np.complex128).ravel().copy()
        n = amp.shape[0]
        if n == 0 or n & (n - 1):
            raise ValueError(f"amplitude count {n} is not a power of two")
        inferred = n.bit_length() - 1
        if length is not None and length != inferred:
            raise ValueError(f"length {length} does not match 2**L = {n}")
        norm = np.linalg.norm(amp)
        if norm == 0.0:
            raise ValueError("zero state vector")
        amp /= norm
        amp.setflags(write=False)
        self.amplitudes = amp
        self.length = inferred

    @classmethod
    def computational(cls, length: int, basis_index: int = 0) -> "StateVector":
        amp = np.zeros(1 << length, dtype=np.complex128)
        amp[basis_index] = 1.0
        return cls(amp)

    @property
    def dim(self) -> int:
        return 1 << self.length

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _bit_parity(values: np.ndarray) -> np.ndarray:
    """Parity (popcount mod 2) of each entry of an integer array."""
    return (np.bitwise_count(values) & 1).astype(np.int64)


def pauli_phases(p: PauliString, dtype=np.complex128) -> np.ndarray:
    """Per-basis-state phase of ``p``: entry b multiplies amplitude b.

    ``(P psi)[b ^ x_mask] = phases[b] * psi[b]`` with
    ``phases[b] = i**n_y * (-1)**popcount(z_mask & b)``.
    """
    idx = np.arange(1 << p.length, dtype=np.int64)
    signs = 1.0 - 2.0 * _bit_parity(idx & p.z_mask)
    phase_y = 1j ** (p.y_count % 4)
    if phase_y.imag == 0.0 and dtype is np.float64:
        return (phase_y.real * signs).astype(np.float64)
    return phase_y * signs.astype(np.complex128)


def pauli_apply(p: PauliString, s: StateVector) -> StateVector:
    """Apply a Pauli string to a state: amplitude permutation times phases.

    Never materializes a matrix; O(2**L) time and memory.
    """
    if p.length != s.length:
        raise ValueError(f"length mismatch: string {p.length}, state {s.length}")
    amp = _pauli_apply_raw(p, s.amplitudes)
    return StateVector(amp)


def _pauli_apply_raw(p: PauliString, amp: np.ndarray) -> np.ndarray:
    idx = np.arange(amp.shape[0], dtype=np.int64)
    src = idx ^ p.x_mask
    signs = 1.0 - 2.0 * _bit_parity(src & p.z_mask)
    out = amp[src] * signs
    n_y = p.y_count % 4
    if n_y:
        out = out * (1j**n_y)
    return out


def pauli_expectation(p: PauliString, s: StateVector) -> float:
    """Real expectation value <s|P|s> of a Hermitian Pauli string."""
    if p.length != s.length:
        raise ValueError(f"length mismatch: string {p.length}, state {s.length}")
    value = np.vdot(s.amplitudes, _pauli_apply_raw(p, s.amplitudes))
    if abs(value.imag) > 1e-10:
        raise ValueError(
            f"imaginary residual {value.imag:.3e} in <{p}>; "
            "phase convention violated"
        )
    return float(value.real)
