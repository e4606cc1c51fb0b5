import math

import numpy as np
import pytest

from xchan.channels import (
    check_extremal,
    check_trace_orthogonal,
    check_trace_preserving,
    choi,
    choi_min_eigenvalue,
)
from xchan.errors import (
    ColumnOverflowError,
    SingularComplementError,
    ValidationError,
)
from xchan.extremal import (
    ExtremalParams,
    build_extremal,
    canonical_unitaries,
    complete_last_diagonal,
    pair_reduction_step,
    parameter_jacobian_rank,
    sample_extremal,
    sample_interior,
)
from xchan.linalg import ID2, SX, dagger


def test_canonical_unitaries_n2():
    us = canonical_unitaries(2)
    assert np.array_equal(us[0], ID2)
    assert np.array_equal(us[1], SX)


def test_canonical_unitaries_n3_are_the_fixed_permutations():
    us = canonical_unitaries(3)
    expected = [
        np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    ]
    for u, e in zip(us, expected):
        assert np.array_equal(u, e.astype(complex))


def test_canonical_unitaries_n4_are_the_two_qubit_flips():
    us = canonical_unitaries(4)
    assert np.array_equal(us[0], np.eye(4, dtype=complex))
    assert np.array_equal(us[1], np.kron(ID2, SX))
    assert np.array_equal(us[2], np.kron(SX, ID2))
    assert np.array_equal(us[3], np.kron(SX, SX))


def test_canonical_unitaries_n5_are_cyclic_shift_powers():
    us = canonical_unitaries(5)
    shift = us[1]
    e0 = np.zeros(5)
    e0[0] = 1.0
    assert np.array_equal(shift @ e0, np.eye(5)[:, 1])
    for i, u in enumerate(us):
        assert np.allclose(u, np.linalg.matrix_power(shift, i))


@pytest.mark.parametrize("n", range(2, 9))
def test_canonical_unitaries_invariants(n):
    us = canonical_unitaries(n)
    assert len(us) == n
    for u in us:
        assert np.max(np.abs(dagger(u) @ u - np.eye(n))) < 1e-14
    for i, ui in enumerate(us):
        for j, uj in enumerate(us):
            if i != j:
                assert np.max(np.abs(np.diag(dagger(ui) @ uj))) < 1e-12


def test_canonical_unitaries_rejects_small_n():
    with pytest.raises(ValueError):
        canonical_unitaries(1)


def test_params_validation():
    good = np.array([[1.0, 0.0], [0.0, 1.0]])
    assert ExtremalParams(good).n == 2
    with pytest.raises(ValidationError):
        ExtremalParams(np.array([[0.9, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValidationError):
        ExtremalParams(np.array([[1.2, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        ExtremalParams(np.ones((2, 3)))


def test_complete_last_diagonal_trivial_column():
    p = complete_last_diagonal(np.array([[1.0, 0.0]]))
    assert np.allclose(p.diagonals, [[1.0, 0.0], [0.0, 1.0]])


def test_complete_last_diagonal_scalar_sqrt_values():
    p = complete_last_diagonal(np.array([[0.9797, 0.6635]]))
    assert p.diagonals[1][0] == pytest.approx(
        math.sqrt(1.0 - 0.9797**2), abs=1e-15
    )
    assert p.diagonals[1][1] == pytest.approx(
        math.sqrt(1.0 - 0.6635**2), abs=1e-15
    )
    assert p.diagonals[1][0] == pytest.approx(0.2005, abs=5e-5)
    assert p.diagonals[1][1] == pytest.approx(0.7482, abs=5e-5)


def test_complete_last_diagonal_reports_overflowing_column():
    with pytest.raises(ColumnOverflowError) as info:
        complete_last_diagonal(np.array([[1.2, 0.0]]))
    assert info.value.column == 0
    assert info.value.excess == pytest.approx(0.44)


def test_complete_last_diagonal_rejects_bad_input():
    with pytest.raises(ValidationError):
        complete_last_diagonal(np.array([[-0.1, 0.0]]))
    with pytest.raises(ValueError):
        complete_last_diagonal(np.ones((2, 2)))


def test_build_extremal_drops_zero_operators():
    ch = build_extremal(ExtremalParams(np.array([[1.0, 1.0], [0.0, 0.0]])))
    assert len(ch) == 1
    assert np.allclose(ch.kraus[0], ID2)


def test_build_extremal_full_damping():
    ch = build_extremal(ExtremalParams(np.array([[1.0, 0.0], [0.0, 1.0]])))
    assert np.allclose(ch.kraus[0], np.diag([1.0, 0.0]))
    assert np.allclose(ch.kraus[1], np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_build_extremal_n3_example_passes_checks():
    p = complete_last_diagonal(
        np.array([[0.6, 0.5, 0.4], [0.5, 0.6, 0.3]])
    )
    ch = build_extremal(p)
    assert check_trace_preserving(ch).residual < 1e-12
    assert check_trace_orthogonal(ch).residual < 1e-12


def test_build_extremal_validates_unitary_count_and_shape():
    p = ExtremalParams(np.array([[1.0, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        build_extremal(p, unitaries=[ID2])
    with pytest.raises(ValueError):
        build_extremal(p, unitaries=[np.eye(3), np.eye(3)])


def test_sample_extremal_is_deterministic():
    _, a = sample_extremal(3, 21)
    _, b = sample_extremal(3, 21)
    _, c = sample_extremal(3, 22)
    assert all(np.array_equal(x, y) for x, y in zip(a.kraus, b.kraus))
    assert not all(np.array_equal(x, y) for x, y in zip(a.kraus, c.kraus))


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("seed", range(10))
def test_sampled_channels_satisfy_defining_conditions(n, seed):
    params, ch = sample_extremal(n, seed)
    assert params.n == n
    assert check_trace_preserving(ch).residual < 1e-10
    assert check_trace_orthogonal(ch).residual < 1e-12
    assert choi_min_eigenvalue(choi(ch)) >= -1e-12
    assert check_extremal(ch).extremal


@pytest.mark.parametrize("n", [2, 3, 4])
def test_choi_rank_is_the_operator_count(n):
    _, ch = sample_extremal(n, seed=33)
    w = np.linalg.eigvalsh(choi(ch))
    rank = int(np.sum(w > 1e-10 * w.max()))
    assert rank == len(ch) <= n


@pytest.mark.parametrize("n", [2, 3, 4])
def test_jacobian_rank_equals_free_parameter_count(n):
    params = sample_interior(n, seed=60 + n)
    assert parameter_jacobian_rank(params) == n * n - n


def test_jacobian_rejects_boundary_points():
    boundary = complete_last_diagonal(np.array([[1.0, 0.0]]))
    with pytest.raises(ValidationError):
        parameter_jacobian_rank(boundary)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("seed", [0, 4])
def test_sample_interior_stays_away_from_the_boundary(n, seed):
    params = sample_interior(n, seed)
    assert np.all(params.diagonals > 1e-3)
    assert np.all(params.diagonals < 1.0 - 1e-3)


def test_pair_reduction_trivial_half_identity():
    m, reduced = pair_reduction_step([ID2 / 2, ID2 / 2], drop_index=1)
    assert np.allclose(m, np.sqrt(2.0) * ID2)
    assert len(reduced) == 1
    assert np.allclose(reduced[0], ID2)


def test_pair_reduction_diagonal_triple_scalar_arithmetic():
    d1 = np.diag([0.36, 0.25, 0.16]).astype(complex)
    d2 = np.diag([0.25, 0.36, 0.09]).astype(complex)
    d3 = np.eye(3) - d1 - d2
    m, reduced = pair_reduction_step([d1, d2, d3], drop_index=2)
    comp = np.diag(np.eye(3) - d3).real
    assert np.allclose(np.diag(m).real, 1.0 / np.sqrt(comp))
    assert np.allclose(reduced[0], np.diag(np.diag(d1).real / comp))
    assert np.allclose(reduced[1], np.diag(np.diag(d2).real / comp))
    assert np.allclose(reduced[0] + reduced[1], np.eye(3), atol=1e-12)


def test_pair_reduction_sum_invariant_on_sampled_channels():
    for n, seed in [(2, 1), (3, 2), (4, 3)]:
        _, ch = sample_extremal(n, seed)
        mats = [dagger(c) @ c for c in ch.kraus]
        for drop in range(len(mats)):
            low = np.linalg.eigvalsh(np.eye(n) - mats[drop]).min()
            if low <= 1e-8:
                continue
            _, reduced = pair_reduction_step(mats, drop)
            assert np.max(np.abs(sum(reduced) - np.eye(n))) < 1e-9


def test_pair_reduction_rejects_singular_complement():
    with pytest.raises(SingularComplementError):
        pair_reduction_step([np.eye(2).astype(complex)], drop_index=0)


def test_pair_reduction_validates_input():
    with pytest.raises(ValidationError):
        pair_reduction_step([ID2 / 2, ID2 / 3], drop_index=0)
    with pytest.raises(ValueError):
        pair_reduction_step([ID2 / 2, ID2 / 2], drop_index=5)
    with pytest.raises(ValueError):
        pair_reduction_step([], drop_index=0)
