"""Ground states of Pauli-term Hamiltonians with degeneracy handling.

Dense LAPACK diagonalization below a dimension cutoff (default 4096, i.e.
12 sites), matrix-free ARPACK Lanczos above it.  Near-degenerate ground
manifolds are resolved deterministically: the solve is repeated with a tiny
model-specific tie-break field added, so that repeated runs, and the two
endpoints of a duality pair, always land on the same state.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .models import (
    Boundary,
    HamiltonianOperator,
    ModelKind,
    ModelSpec,
    apply_terms,
    build_model,
    dense_matrix,
    magnetization_basis,
    project_to_sector,
    scatter_from_sector,
    symmetry_sector,
    tiebreak_field,
)
from .pauli import StateVector


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-10
    max_iterations: int = 2000
    seed: int = 7
    degeneracy_epsilon: float = 1e-7
    degeneracy_threshold: float = 1e-8  # relative to max(1, |E0|)
    dense_cutoff: int = 4096  # largest dimension solved by full dense LAPACK
    use_sector: bool = True  # magnetization projection for dimerized_xx


@dataclass
class GroundStateResult:
    energy: float
    state: StateVector
    gap: float
    degenerate: bool
    iterations: int
    residual: float
    seed: int = 0
    diagnostics: dict = field(default_factory=dict)


class ConvergenceError(RuntimeError):
    pass


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude amplitude real positive (frozen convention)."""
    k = int(np.argmax(np.abs(vec)))
    pivot = vec[k]
    return vec * (np.conj(pivot) / np.abs(pivot))


def _dense_lowest(mat: np.ndarray, k: int):
    dim = mat.shape[0]
    k = min(k, dim)
    vals, vecs = linalg.eigh(
        mat, subset_by_index=[0, k - 1], driver="evr", check_finite=False
    )
    return vals, vecs


def _lanczos_lowest(matvec, dim: int, k: int, opts: SolverOptions, dtype=np.float64):
    """k lowest eigenpairs via ARPACK with a seeded start vector."""
    calls = 0

    def counted(v):
        nonlocal calls
        calls += 1
        return matvec(v)

    op = LinearOperator((dim, dim), matvec=counted, dtype=dtype)
    rng = np.random.default_rng(opts.seed)
    v0 = rng.standard_normal(dim)
    try:
        vals, vecs = eigsh(
            op, k=k, which="SA", v0=v0, tol=opts.tolerance,
            maxiter=opts.max_iterations,
        )
    except ArpackNoConvergence as exc:
        raise ConvergenceError(
            f"Lanczos failed to converge within {opts.max_iterations} "
            f"iterations ({len(exc.eigenvalues)} of {k} eigenvalues found)"
        ) from exc
    order = np.argsort(vals)
    return vals[order], vecs[:, order], calls


def _hamiltonian_is_real(h: HamiltonianOperator) -> bool:
    return all(p.y_count % 2 == 0 for _, p in h.terms)


def _real_matvec(h: HamiltonianOperator):
    def matvec(v):
        return apply_terms(h, np.asarray(v, dtype=np.float64))

    return matvec


def _solve_operator(h: HamiltonianOperator, k: int, opts: SolverOptions):
    """(values, vectors, iterations) for the k lowest states of h, full space."""
    dim = 1 << h.length
    k = min(k, dim)
    if dim <= opts.dense_cutoff:
        vals, vecs = _dense_lowest(dense_matrix(h), k)
        return vals, vecs, 0
    if _hamiltonian_is_real(h):
        return _lanczos_lowest(_real_matvec(h), dim, k, opts)

    def matvec(v):
        return apply_terms(h, np.asarray(v, dtype=np.complex128))

    return _lanczos_lowest(matvec, dim, k, opts, dtype=np.complex128)


def low_spectrum(h: HamiltonianOperator, k: int, opts: SolverOptions | None = None) -> np.ndarray:
    """The k lowest eigenvalues of h in nondecreasing order.

    Always works in the full 2**L space; residuals are checked against the
    solver tolerance scaled by the spectral range seen.
    """
    opts = opts or SolverOptions()
    dim = 1 << h.length
    if not 1 <= k <= dim:
        raise ValueError(f"k={k} outside [1, {dim}]")
    vals, vecs, _ = _solve_operator(h, k, opts)
    scale = max(1.0, float(np.max(np.abs(vals))))
    for i in range(k):
        r = np.linalg.norm(apply_terms(h, vecs[:, i]) - vals[i] * vecs[:, i])
        if r > 1e-8 * scale:
            raise ConvergenceError(f"residual {r:.2e} at level {i}")
    return np.sort(vals[:k])


def _select_in_subspace(cols: np.ndarray) -> tuple[np.ndarray, int]:
    """Canonical state in a degenerate subspace: normalized projection of a
    fixed reference basis state.

    Depends only on the subspace, not on the eigenvector basis the solver
    happened to return.  Reference |0...0> is used unless its projection is
    negligible; then the basis state with the largest subspace weight.
    """
    weights = np.sum(np.abs(cols) ** 2, axis=1)
    ref = 0 if weights[0] > 1e-8 else int(np.argmax(weights))
    coeff = np.conj(cols[ref, :])
    vec = cols @ coeff
    return vec / np.linalg.norm(vec), ref


def ground_state(
    h: HamiltonianOperator,
    opts: SolverOptions | None = None,
    tiebreak: HamiltonianOperator | None = None,
) -> GroundStateResult:
    """Lowest eigenpair of h with explicit degeneracy detection.

    If the gap falls below the degeneracy threshold, the state is picked
    deterministically: with a tie-break operator supplied, the solve is
    repeated on h + eps * tiebreak; without one, the solve widens to the
    whole near-degenerate cluster of levels and returns the canonical
    reference projection inside it.  Energy stays the unperturbed E0.
    The returned state has its largest-magnitude amplitude real positive.
    """
    opts = opts or SolverOptions()
    dim = 1 << h.length
    k = min(2, dim)
    vals, vecs, iters = _solve_operator(h, k, opts)
    e0 = float(vals[0])
    gap = float(vals[1] - vals[0]) if k > 1 else 0.0
    window = opts.degeneracy_threshold * max(1.0, abs(e0))
    degenerate = gap < window
    vec = vecs[:, 0]
    diagnostics = {}
    if degenerate and tiebreak is not None:
        perturbed = h + tiebreak.scaled(opts.degeneracy_epsilon)
        pvals, pvecs, piters = _solve_operator(perturbed, min(2, dim), opts)
        vec = pvecs[:, 0]
        iters += piters
        diagnostics["tiebreak_epsilon"] = opts.degeneracy_epsilon
        diagnostics["tiebreak_energy"] = float(pvals[0])
    elif degenerate:
        k_wide = min(8, dim)
        wvals, wvecs, witers = _solve_operator(h, k_wide, opts)
        iters += witers
        inside = wvals - wvals[0] < window
        vec, ref = _select_in_subspace(wvecs[:, inside])
        diagnostics["subspace_dim"] = int(np.count_nonzero(inside))
        diagnostics["subspace_reference"] = ref
    vec = _fix_phase(vec.astype(np.complex128))
    residual = float(np.linalg.norm(apply_terms(h, vec) - e0 * vec))
    state = StateVector(vec)
    return GroundStateResult(
        energy=e0, state=state, gap=gap, degenerate=degenerate,
        iterations=iters, residual=residual, seed=opts.seed,
        diagnostics=diagnostics,
    )


def solve_model(spec: ModelSpec, opts: SolverOptions | None = None) -> GroundStateResult:
    """Model-aware ground state: sector projection plus tie-break wiring.

    The dimerized XX chain is solved in its zero-magnetization sector (the
    ground state lives there for every dimerization); when the in-sector
    gap flags a degeneracy the solve falls back to the full space with the
    model's tie-break field, since the perturbation may prefer a different
    magnetization at the decoupled-edge points.
    """
    opts = opts or SolverOptions()
    h = build_model(spec)
    sector = symmetry_sector(spec)
    use_projection = (
        opts.use_sector
        and spec.kind == ModelKind.DIMERIZED_XX
        and sector.conserved == "total_sz"
    )
    if not use_projection:
        return ground_state(h, opts, tiebreak=tiebreak_field(spec))

    basis = magnetization_basis(spec.length)
    if basis.size <= opts.dense_cutoff:
        vals, vecs = _dense_lowest(project_to_sector(h, basis), min(2, basis.size))
        iters = 0
    else:
        def matvec(v):
            full = scatter_from_sector(np.asarray(v, np.float64), basis, spec.length)
            return apply_terms(h, full)[basis]

        vals, vecs, iters = _lanczos_lowest(matvec, basis.size, 2, opts)
    e0 = float(vals[0])
    gap = float(vals[1] - vals[0]) if vals.shape[0] > 1 else 0.0
    degenerate = gap < opts.degeneracy_threshold * max(1.0, abs(e0))
    if degenerate:
        result = ground_state(h, opts, tiebreak=tiebreak_field(spec))
        # keep the sector solve's energy: identical up to solver tolerance,
        # but the full solve may have landed in another magnetization sector
        result.gap = min(result.gap, gap)
        result.degenerate = True
        return result
    vec = _fix_phase(scatter_from_sector(vecs[:, 0], basis, spec.length).astype(np.complex128))
    residual = float(np.linalg.norm(apply_terms(h, vec) - e0 * vec))
    return GroundStateResult(
        energy=e0, state=StateVector(vec), gap=gap, degenerate=False,
        iterations=iters, residual=residual, seed=opts.seed,
        diagnostics={"sector": "total_sz=0", "sector_dim": int(basis.size)},
    )
