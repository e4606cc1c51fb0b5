"""Extremal channel construction from diagonal parameters.

An extremal channel on an N-level system is assembled as ``C_i = U_i D_i``
where the ``D_i`` are non-negative diagonal matrices whose squared entries
sum to 1 down each column (completeness) and the ``U_i`` are fixed canonical
unitaries chosen so every pairwise product ``U_i^dag U_j`` (i != j) has zero
diagonal, which makes the operators pairwise trace orthogonal for any choice
of diagonals.  The family carries N^2 - N free real parameters: the N^2
squared diagonal entries minus the N per-column completeness constraints.

Any right unitary factors of the Kraus operators can be absorbed into the
diagonals (they only permute singular values), so the parametrization has no
separate V factors; ``pair_reduction_step`` exposes the conjugation identity
that underlies this absorption as a verification utility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, choi
from .errors import ColumnOverflowError, SingularComplementError, ValidationError
from .linalg import ID2, SX, as_complex, dagger, herm_eig
from .tolerances import TOL_PSD, TOL_TP

# Entries must stay this far from {0, 1} for finite differencing.
INTERIOR_MARGIN = 1e-3

# Relative singular-value cutoff for the finite-difference Jacobian.  Central
# differences at step 1e-5 leave noise around 1e-9 of scale, far below this.
JACOBIAN_RANK_TOL = 1e-6


@dataclass(frozen=True)
class ExtremalParams:
    """N non-negative diagonals, squared entries summing to 1 per column.

    ``diagonals[i]`` holds the entries of the i-th diagonal factor D_i.
    """

    diagonals: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonals, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"diagonals must be square (N, N), got {d.shape}")
        if d.shape[0] < 2:
            raise ValueError("need at least a 2-level system")
        if not np.all(np.isfinite(d)):
            raise ValueError("diagonals have non-finite entries")
        if np.any(d < 0) or np.any(d > 1):
            raise ValidationError("diagonal entries must lie in [0, 1]")
        sums = (d**2).sum(axis=0)
        worst = float(np.max(np.abs(sums - 1.0)))
        if worst > 1e-10:
            raise ValidationError(
                "squared diagonal entries must sum to 1 per column",
                residual=worst,
            )
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "diagonals", d)

    @property
    def n(self) -> int:
        return self.diagonals.shape[0]


def canonical_unitaries(n: int) -> list[np.ndarray]:
    """Fixed unitaries whose pairwise products have zero diagonal.

    n=2 uses {I, sigma_x}; n=3 uses three symmetric permutations whose
    pairwise products are 3-cycles; n=4 uses the sigma_x tensor grid
    {I(x)I, I(x)sx, sx(x)I, sx(x)sx}; larger n uses powers of the cyclic
    shift S e_m = e_{m+1 mod n}.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n == 2:
        return [ID2.copy(), SX.copy()]
    if n == 3:
        return [
            np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
            np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex),
            np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex),
        ]
    if n == 4:
        return [
            np.eye(4, dtype=complex),
            np.kron(ID2, SX),
            np.kron(SX, ID2),
            np.kron(SX, SX),
        ]
    shift = np.zeros((n, n), dtype=complex)
    for m in range(n):
        shift[(m + 1) % n, m] = 1.0
    return [np.linalg.matrix_power(shift, i) for i in range(n)]


def complete_last_diagonal(partials) -> ExtremalParams:
    """Fill in the last diagonal factor from the first N-1.

    ``partials`` is an (N-1, N) array of non-negative entries; the last row
    is completed as sqrt(1 - column sum of squares), with round-off negatives
    clamped to zero.

    Raises
    ------
    ColumnOverflowError
        If some column's squared entries already exceed 1 beyond tolerance.
    """
    d = np.asarray(partials, dtype=float)
    if d.ndim != 2 or d.shape != (d.shape[1] - 1, d.shape[1]):
        raise ValueError(
            f"expected (N-1, N) partial diagonals, got shape {d.shape}"
        )
    if not np.all(np.isfinite(d)):
        raise ValueError("partial diagonals have non-finite entries")
    if np.any(d < 0):
        raise ValidationError("diagonal entries must be non-negative")
    sums = (d**2).sum(axis=0)
    for m, s in enumerate(sums):
        if s > 1.0 + TOL_PSD:
            raise ColumnOverflowError(column=m, excess=float(s - 1.0))
    last = np.sqrt(np.clip(1.0 - sums, 0.0, None))
    return ExtremalParams(np.vstack([d, last[None, :]]))


def build_extremal(
    params: ExtremalParams, unitaries: list[np.ndarray] | None = None
) -> KrausChannel:
    """Assemble the channel with operators U_i diag(D_i).

    All-zero diagonal factors contribute nothing to the map and would skew
    the operator count, so they are dropped.  Defaults to the canonical
    unitaries for the given dimension.
    """
    n = params.n
    if unitaries is None:
        unitaries = canonical_unitaries(n)
    if len(unitaries) != n:
        raise ValueError(f"expected {n} unitaries, got {len(unitaries)}")
    ops = []
    for u, entries in zip(unitaries, params.diagonals):
        u = as_complex(u)
        if u.shape != (n, n):
            raise ValueError(f"unitary shape {u.shape} does not match n={n}")
        if np.all(entries == 0.0):
            continue
        ops.append(u * entries[None, :])
    return KrausChannel(tuple(ops))


def sample_extremal(n: int, seed: int) -> tuple[ExtremalParams, KrausChannel]:
    """Random member of the extremal family, deterministic in the seed.

    Per column the squared entries are a flat Dirichlet draw (normalized
    exponentials), so every sample satisfies completeness exactly up to
    round-off.
    """
    params = ExtremalParams(_dirichlet_diagonals(n, seed))
    return params, build_extremal(params)


def sample_interior(n: int, seed: int) -> ExtremalParams:
    """Random parameters with every entry away from the {0, 1} boundary.

    The squared entries are blended toward the uniform column 1/n, keeping
    each entry in [0.1/n, 0.95] so finite differencing is well conditioned.
    """
    squares = _dirichlet_diagonals(n, seed) ** 2
    squares = 0.9 * squares + 0.1 / n
    return ExtremalParams(np.sqrt(squares))


def parameter_jacobian_rank(
    params: ExtremalParams,
    step: float = 1e-5,
    rank_tol: float = JACOBIAN_RANK_TOL,
) -> int:
    """Numerical rank of the parameters-to-Choi Jacobian.

    The free parameters are the squared entries of the first N-1 diagonals
    (the last is completed); the map lands in the real embedding of the Choi
    matrix.  Central differences with the given step.  At generic interior
    points the rank equals N^2 - N, the family's parameter count.

    Raises
    ------
    ValidationError
        If some entry is within INTERIOR_MARGIN of 0 or 1, where one-sided
        effects would corrupt the differences.
    """
    d = params.diagonals
    n = params.n
    if np.any(d <= INTERIOR_MARGIN) or np.any(d >= 1.0 - INTERIOR_MARGIN):
        raise ValidationError(
            "parameters must be strictly interior for finite differencing"
        )
    unitaries = canonical_unitaries(n)
    free = (d**2)[:-1]
    cols = []
    for i in range(n - 1):
        for m in range(n):
            plus = free.copy()
            minus = free.copy()
            plus[i, m] += step
            minus[i, m] -= step
            delta = _choi_embedding(plus, unitaries) - _choi_embedding(
                minus, unitaries
            )
            cols.append(delta / (2.0 * step))
    jac = np.column_stack(cols)
    s = np.linalg.svd(jac, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def pair_reduction_step(
    mats, drop_index: int
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Conjugate a resolution of the identity down by one member.

    Given PSD matrices A_i with sum A_i = I, drops the chosen one and
    conjugates the rest by M = (I - A_drop)^(-1/2), so the reduced set again
    sums to the identity.  Returns ``(M, reduced)``.

    Raises
    ------
    SingularComplementError
        If I - A_drop has an eigenvalue <= 1e-8 and cannot be inverted.
    """
    mats = [as_complex(a) for a in mats]
    if not mats:
        raise ValueError("need at least one matrix")
    if not 0 <= drop_index < len(mats):
        raise ValueError(f"drop_index {drop_index} out of range")
    n = mats[0].shape[0]
    total = sum(mats)
    residual = float(np.max(np.abs(total - np.eye(n))))
    if residual > TOL_TP:
        raise ValidationError(
            "matrices must sum to the identity", residual=residual
        )
    complement = np.eye(n) - mats[drop_index]
    w, v = herm_eig(complement)
    low = float(w.min())
    if low <= 1e-8:
        raise SingularComplementError(
            "I - A_drop is numerically singular", residual=low
        )
    m = (v / np.sqrt(w)) @ dagger(v)
    m = 0.5 * (m + dagger(m))
    reduced = [m @ a @ m for i, a in enumerate(mats) if i != drop_index]
    return m, reduced


def _dirichlet_diagonals(n: int, seed: int) -> np.ndarray:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    e = rng.standard_exponential((n, n))
    return np.sqrt(e / e.sum(axis=0))


def _choi_embedding(free_squares: np.ndarray, unitaries) -> np.ndarray:
    # Completion may momentarily dip below zero while differencing; clamp.
    last = np.clip(1.0 - free_squares.sum(axis=0), 0.0, None)
    squares = np.vstack([np.clip(free_squares, 0.0, None), last[None, :]])
    d = np.sqrt(squares)
    n = d.shape[0]
    ops = [u * row[None, :] for u, row in zip(unitaries, d)]
    j = choi(KrausChannel(tuple(ops)))
    return np.concatenate([j.real.ravel(), j.imag.ravel()])
