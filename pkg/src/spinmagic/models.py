"""The three spin-1/2 chains, built as weighted Pauli-term lists.

All Hamiltonians are stored as ``(coefficient, PauliString)`` term lists,
never as matrices; application is matrix-free through the pauli kernels.
Under PBC each model gains exactly its loop-closing terms.
"""

from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .pauli import PauliString, StateVector, make_pauli, pauli_phases


class ModelKind(str, Enum):
    DIMERIZED_XX = "dimerized_xx"
    CLUSTER_ISING = "cluster_ising"
    TRANSVERSE_ISING = "transverse_ising"


class Boundary(str, Enum):
    OBC = "obc"
    PBC = "pbc"


@dataclass(frozen=True)
class ModelSpec:
    """Model kind, chain length, coupling and boundary; fixes a Hamiltonian."""

    kind: ModelKind
    length: int
    parameter: float
    boundary: Boundary = Boundary.OBC

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        L, p = self.length, self.parameter
        if L < 1:
            raise ValueError(f"length must be positive, got {L}")
        if not np.isfinite(p):
            raise ValueError(f"parameter must be finite, got {p}")
        if self.kind == ModelKind.DIMERIZED_XX:
            if L % 2 or L < 2:
                raise ValueError(f"dimerized_xx needs even length >= 2, got {L}")
            if not -1.0 <= p <= 1.0:
                raise ValueError(f"dimerization must lie in [-1, 1], got {p}")
        elif self.kind == ModelKind.CLUSTER_ISING:
            if L < 3:
                raise ValueError(f"cluster_ising needs length >= 3, got {L}")
            if p < 0.0:
                raise ValueError(f"cluster_ising coupling must be >= 0, got {p}")
        else:
            if p < 0.0:
                raise ValueError(f"transverse field must be >= 0, got {p}")
        if self.boundary == Boundary.PBC and L < 3:
            raise ValueError(f"PBC needs length >= 3, got {L}")


@dataclass(frozen=True)
class HamiltonianOperator:
    """Weighted Pauli-term list; Hermitian by construction."""

    terms: tuple
    length: int

    def __post_init__(self):
        for coef, string in self.terms:
            if not np.isfinite(coef):
                raise ValueError(f"non-finite coefficient {coef}")
            if string.length != self.length:
                raise ValueError(
                    f"term length {string.length} != operator length {self.length}"
                )

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def __add__(self, other: "HamiltonianOperator") -> "HamiltonianOperator":
        if other.length != self.length:
            raise ValueError("cannot add operators of different length")
        return HamiltonianOperator(self.terms + other.terms, self.length)

    def scaled(self, factor: float) -> "HamiltonianOperator":
        return HamiltonianOperator(
            tuple((factor * c, p) for c, p in self.terms), self.length
        )


def _site_letters(length: int, placed: dict[int, str]) -> str:
    """Letters string with given 1-based site -> letter placements."""
    letters = ["I"] * length
    for site, letter in placed.items():
        letters[site - 1] = letter
    return "".join(letters)


def _term(length: int, coef: float, placed: dict[int, str]):
    return (float(coef), make_pauli(_site_letters(length, placed)))


def build_model(spec: ModelSpec) -> HamiltonianOperator:
    """Construct the Hamiltonian term list for a validated ModelSpec."""
    L, p = spec.length, spec.parameter
    pbc = spec.boundary == Boundary.PBC
    terms = []
    if spec.kind == ModelKind.DIMERIZED_XX:
        # Alternating-bond XX chain: weight (1 + (-1)^k d)/2 on bond k.
        for k in range(1, L):
            w = (1.0 + (-1.0) ** k * p) / 2.0
            terms.append(_term(L, w, {k: "X", k + 1: "X"}))
            terms.append(_term(L, w, {k: "Y", k + 1: "Y"}))
        if pbc:
            w = (1.0 + p) / 2.0  # bond L closes the loop; L is even
            terms.append(_term(L, w, {1: "X", L: "X"}))
            terms.append(_term(L, w, {1: "Y", L: "Y"}))
    elif spec.kind == ModelKind.CLUSTER_ISING:
        for i in range(1, L - 1):
            terms.append(_term(L, -1.0, {i: "X", i + 1: "Z", i + 2: "X"}))
        for i in range(1, L):
            terms.append(_term(L, p, {i: "Y", i + 1: "Y"}))
        if pbc:
            terms.append(_term(L, -1.0, {L - 1: "X", L: "Z", 1: "X"}))
            terms.append(_term(L, -1.0, {L: "X", 1: "Z", 2: "X"}))
            terms.append(_term(L, p, {1: "Y", L: "Y"}))
    else:
        for i in range(1, L):
            terms.append(_term(L, -1.0, {i: "Z", i + 1: "Z"}))
        for i in range(1, L + 1):
            terms.append(_term(L, -p, {i: "X"}))
        if pbc:
            terms.append(_term(L, -1.0, {1: "Z", L: "Z"}))
    return HamiltonianOperator(tuple(terms), L)


def apply_hamiltonian(h: HamiltonianOperator, s: StateVector) -> np.ndarray:
    """H|s> as a raw (unnormalized) amplitude array, matrix-free."""
    if h.length != s.length:
        raise ValueError(f"length mismatch: operator {h.length}, state {s.length}")
    return apply_terms(h, s.amplitudes)


def apply_terms(h: HamiltonianOperator, amp: np.ndarray) -> np.ndarray:
    """Accumulate sum_t c_t P_t amp in fixed term order (deterministic).

    Real input stays real when every term carries an even number of Y
    letters (the case for all three models), so Lanczos can run in float64.
    """
    idx = np.arange(amp.shape[0], dtype=np.int64)
    needs_complex = np.iscomplexobj(amp) or any(p.y_count % 2 for _, p in h.terms)
    out = np.zeros(amp.shape, dtype=np.complex128 if needs_complex else np.float64)
    for coef, p in h.terms:
        src = idx ^ p.x_mask
        signs = 1.0 - 2.0 * (np.bitwise_count(src & p.z_mask) & 1)
        contrib = amp[src] * signs
        n_y = p.y_count % 4
        if n_y == 2:
            out -= coef * contrib
        elif n_y == 0:
            out += coef * contrib
        else:
            out += (coef * 1j**n_y) * contrib
    return out


def dense_matrix(h: HamiltonianOperator) -> np.ndarray:
    """Dense matrix of the operator; real float64 whenever every term is.

    Column b of term (c, P) contributes c * phase(b) at row b ^ x_mask.
    """
    dim = 1 << h.length
    is_real = all(p.y_count % 2 == 0 for _, p in h.terms)
    dtype = np.float64 if is_real else np.complex128
    mat = np.zeros((dim, dim), dtype=dtype)
    cols = np.arange(dim, dtype=np.int64)
    for coef, p in h.terms:
        phases = pauli_phases(p, dtype=dtype)
        mat[cols ^ p.x_mask, cols] += coef * phases
    return mat


@dataclass(frozen=True)
class SectorDescriptor:
    """Conserved quantity labeling the ground state, and the target sector."""

    conserved: str  # "total_sz" | "x_parity" | "none"
    sector: object  # 0 for total_sz, "even" for x_parity, None otherwise
    dimension: int


def symmetry_sector(spec: ModelSpec) -> SectorDescriptor:
    """Which symmetry sector hosts the ground state.

    Sector restriction is an optimization hint; solvers may ignore it.
    """
    L = spec.length
    if spec.kind == ModelKind.DIMERIZED_XX:
        return SectorDescriptor("total_sz", 0, comb(L, L // 2))
    if spec.kind == ModelKind.TRANSVERSE_ISING:
        return SectorDescriptor("x_parity", "even", (1 << L) // 2)
    return SectorDescriptor("none", None, 1 << L)


def magnetization_basis(length: int, n_up: int | None = None) -> np.ndarray:
    """Basis indices with fixed popcount (up-spin count), ascending.

    Default sector is zero magnetization (popcount = L/2).
    """
    if n_up is None:
        if length % 2:
            raise ValueError("zero-magnetization sector needs even length")
        n_up = length // 2
    b = np.arange(1 << length, dtype=np.int64)
    return b[np.bitwise_count(b) == n_up]


def project_to_sector(h: HamiltonianOperator, basis: np.ndarray) -> np.ndarray:
    """Dense matrix of H restricted to a conserved-popcount sector.

    Individual terms may hop outside the sector; those matrix elements of
    the full H are exactly zero (paired X/Y contributions cancel), so they
    are dropped rather than accumulated.
    """
    dim_full = 1 << h.length
    pos = np.full(dim_full, -1, dtype=np.int64)
    pos[basis] = np.arange(basis.shape[0])
    is_real = all(p.y_count % 2 == 0 for _, p in h.terms)
    dtype = np.float64 if is_real else np.complex128
    mat = np.zeros((basis.shape[0], basis.shape[0]), dtype=dtype)
    cols = np.arange(basis.shape[0])
    for coef, p in h.terms:
        rows_full = basis ^ p.x_mask
        keep = pos[rows_full] >= 0
        signs = 1.0 - 2.0 * (np.bitwise_count(basis & p.z_mask) & 1)
        ph = 1j ** (p.y_count % 4)
        phase_y = complex(ph) if dtype is np.complex128 else float(ph.real)
        vals = (coef * phase_y) * signs
        mat[pos[rows_full[keep]], cols[keep]] += vals[keep]
    return mat


def scatter_from_sector(vec: np.ndarray, basis: np.ndarray, length: int) -> np.ndarray:
    """Embed a sector vector back into the full 2**L space."""
    full = np.zeros(1 << length, dtype=vec.dtype)
    full[basis] = vec
    return full


def tiebreak_field(spec: ModelSpec) -> HamiltonianOperator | None:
    """Symmetry-respecting perturbation selecting a deterministic state
    inside (near-)degenerate ground manifolds.

    * dimerized_xx: +sigma^z on both edge sites; commutes with total S^z and
      splits the decoupled-edge configurations at first order.
    * transverse_ising: minus the global sigma^x parity string, which
      commutes with H and picks the even-parity combination exactly even
      when the intrinsic parity splitting is below machine resolution.
    * cluster_ising: None.  The open chain carries an exact antiunitary
      doubling of its whole spectrum, and no local field splits the ground
      doublet at first order uniformly in L (checked numerically for edge
      fields up to two-site support).  The solver instead canonicalizes the
      state inside the degenerate subspace by projecting a fixed reference
      basis state, which at zero coupling reproduces the code-projected
      (stabilizer) state.
    """
    L = spec.length
    if spec.kind == ModelKind.DIMERIZED_XX:
        terms = (_term(L, 1.0, {1: "Z"}), _term(L, 1.0, {L: "Z"}))
    elif spec.kind == ModelKind.TRANSVERSE_ISING:
        terms = (_term(L, -1.0, {i: "X" for i in range(1, L + 1)}),)
    else:
        return None
    return HamiltonianOperator(terms, L)
