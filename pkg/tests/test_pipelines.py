import numpy as np
import pytest

from qlasim import (
    RegisterLayout,
    add_ancilla,
    bilinear,
    branch_probability,
    cnot,
    controlled_measure,
    controlled_on_zero_flip,
    decode_rcm,
    det_lu,
    determinant_phase,
    encode_rc,
    encode_rcm,
    hadamard_register,
    hermitian_conjugate,
    inner_product_phase,
    inverse_gj,
    linear_stage,
    matrix_add,
    matrix_inverse,
    matrix_mul,
    naive_success_bench,
    prepare_labeled_state,
    row_sum,
    row_sums,
    stream,
)
from qlasim.linalg import SingularMatrixError
from qlasim.pipelines import FLAG, LABEL

ATOL = 1e-10


def _rand(rng, rows, cols=None):
    shape = (rows,) if cols is None else (rows, cols)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _direction(x):
    x = np.asarray(x)
    return x / np.linalg.norm(x)


# --- row sums ----------------------------------------------------------------

def test_row_sum_uniform_matrix_has_no_garbage():
    report = row_sum(encode_rc([[0.5, 0.5], [0.5, 0.5]]))
    assert report.outcome == 1
    assert report.branch_weight == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(
        _direction(report.result.matrix), np.array([1, 1]) / np.sqrt(2), atol=1e-12
    )


def test_row_sum_cancellation_leaves_state_unchanged():
    s = 1 / np.sqrt(2)
    encoded = encode_rc([[s, -s], [0.0, 0.0]])
    report = row_sum(encoded)
    assert report.outcome is None
    assert report.result is None
    assert report.branch_weight == 0.0

    # rebuild the pre-measurement state by hand: bit-identical to what the
    # pipeline reports back as untouched
    expected = hadamard_register(encoded.state, "C")
    expected = controlled_on_zero_flip(add_ancilla(expected, LABEL), "C", (LABEL, 0))
    expected = cnot(add_ancilla(expected, FLAG), (LABEL, 0), (FLAG, 0))
    np.testing.assert_array_equal(report.final_state.amplitudes, expected.amplitudes)


def test_row_sum_matches_classical_oracle():
    rng = np.random.default_rng(31)
    for _ in range(20):
        a = _rand(rng, 4, 4)
        report = row_sum(encode_rc(a))
        sums = row_sums(a)
        np.testing.assert_allclose(
            _direction(report.result.matrix), _direction(sums), atol=ATOL
        )
        np.testing.assert_allclose(report.result.matrix, sums, atol=1e-9)
        normalized = row_sums(a / np.linalg.norm(a))
        expected_weight = float(np.sum(np.abs(normalized) ** 2)) / 4
        assert report.branch_weight == pytest.approx(expected_weight, abs=ATOL)
        assert report.recovered_norm == pytest.approx(
            float(np.linalg.norm(normalized)), abs=ATOL
        )


def test_row_sum_gate_depth_is_linear_in_summed_width():
    depths = {}
    for n_c in (1, 2, 3, 4):
        a = np.full((2, 2 ** n_c), 1.0)
        depths[n_c] = row_sum(encode_rc(a)).gate_depth
    assert depths[1] == 5  # 1 Hadamard + depth-3 flip + labeling CNOT
    for n_c in (2, 3):
        assert depths[n_c + 1] - depths[n_c] == 5  # one Hadamard + 4 flip layers


# --- Hermitian conjugation ----------------------------------------------------

def test_hconj_scalar_imaginary():
    dec = decode_rcm(hermitian_conjugate(encode_rcm([[1j]])))
    np.testing.assert_allclose(dec.matrix, [[-1j]], atol=1e-15)


def test_hconj_real_transpose():
    dec = decode_rcm(hermitian_conjugate(encode_rcm([[0.0, 1.0], [0.0, 0.0]])))
    np.testing.assert_allclose(dec.matrix, [[0, 0], [1, 0]], atol=1e-15)


def test_hconj_random_matches_conjugate_transpose():
    rng = np.random.default_rng(32)
    for _ in range(20):
        a = _rand(rng, 4, 4)
        dec = decode_rcm(hermitian_conjugate(encode_rcm(a)))
        np.testing.assert_allclose(dec.matrix, a.conj().T, atol=1e-12)


def test_hconj_involution_on_state():
    rng = np.random.default_rng(33)
    a = _rand(rng, 4, 4)
    enc = encode_rcm(a)
    back = hermitian_conjugate(hermitian_conjugate(enc))
    np.testing.assert_allclose(back.state.amplitudes, enc.state.amplitudes, atol=1e-12)


def test_hconj_hermitian_fixed_point():
    rng = np.random.default_rng(34)
    a = _rand(rng, 4, 4)
    h = a + a.conj().T
    dec = decode_rcm(hermitian_conjugate(encode_rcm(h)))
    np.testing.assert_allclose(dec.matrix, h, atol=1e-12)


def test_hconj_rectangular_pads_and_crops():
    rng = np.random.default_rng(35)
    a = _rand(rng, 2, 4)
    conj = hermitian_conjugate(encode_rcm(a))
    assert (conj.rows, conj.cols) == (4, 2)
    np.testing.assert_allclose(decode_rcm(conj).matrix, a.conj().T, atol=1e-12)
    # and back again, cropping to the original shape
    back = hermitian_conjugate(conj)
    np.testing.assert_allclose(decode_rcm(back).matrix, a, atol=1e-12)


def test_hconj_preserves_norm_and_scale():
    rng = np.random.default_rng(36)
    a = _rand(rng, 3, 3)
    enc = encode_rcm(a)
    conj = hermitian_conjugate(enc)
    assert conj.scale == enc.scale
    assert conj.state.norm() == pytest.approx(1.0, abs=1e-12)


# --- prepared labeled states ---------------------------------------------------

def test_prepare_labeled_pure_payload():
    layout = RegisterLayout([("v", 1), (LABEL, 1)])
    labeled = prepare_labeled_state({(0,): 1.0}, layout, LABEL, 0.0, stream(0))
    expected = np.zeros(4)
    expected[layout.index_of({"v": 0, LABEL: 1})] = 1.0
    np.testing.assert_array_equal(labeled.state.amplitudes, expected)


def test_prepare_labeled_pure_garbage_never_measures():
    layout = RegisterLayout([("v", 2), (LABEL, 1)])
    labeled = prepare_labeled_state({}, layout, LABEL, 1.0, stream(1))
    assert labeled.garbage_weight == 1.0
    st = cnot(add_ancilla(labeled.state, FLAG), (LABEL, 0), (FLAG, 0))
    res = controlled_measure(st, (LABEL, 0), (FLAG, 0))
    assert res.outcome is None
    assert res.post_state is st


def test_prepare_labeled_weight_mismatch():
    layout = RegisterLayout([("v", 1), (LABEL, 1)])
    with pytest.raises(ValueError, match="sum to 1"):
        prepare_labeled_state({(0,): 0.5}, layout, LABEL, 0.5, stream(2))


def test_prepare_labeled_sector_invariant():
    rng = np.random.default_rng(37)
    layout = RegisterLayout([("v", 2), ("aux", 1), (LABEL, 1)])
    coeff = 0.3 + 0.4j
    labeled = prepare_labeled_state(
        {(2, 0): coeff}, layout, LABEL, 1.0 - abs(coeff) ** 2, rng
    )
    p = branch_probability(labeled.state, (LABEL, 0), 1)
    assert p + labeled.garbage_weight == pytest.approx(1.0, abs=1e-10)
    # the labeled sector holds only the declared basis point
    assert labeled.state.amplitudes[layout.index_of({"v": 2, "aux": 0, LABEL: 1})] == coeff
    nd = labeled.state.amplitudes.reshape(4, 2, 2)
    labeled_sector = nd[:, :, 1].copy()
    labeled_sector[2, 0] = 0.0
    assert np.all(labeled_sector == 0)


# --- inner product phase --------------------------------------------------------

def test_inner_phase_identity_vectors():
    report = inner_product_phase([1, 0], [1, 0])
    assert report.outcome == 1
    assert report.result == pytest.approx(1.0, abs=1e-12)


def test_inner_phase_is_bilinear_not_sesquilinear():
    report = inner_product_phase([1, 0], [1j, 0])
    assert report.result == pytest.approx(1j, abs=1e-12)


def test_inner_phase_random_matches_direct_sum():
    rng = np.random.default_rng(38)
    for _ in range(20):
        p1, p2 = _rand(rng, 8), _rand(rng, 8)
        report = inner_product_phase(p1, p2)
        ip = bilinear(_direction(p2), _direction(p1))
        assert abs(report.result - ip / abs(ip)) < ATOL
        assert report.branch_weight == pytest.approx(abs(ip) ** 2 / 2 ** 9, abs=ATOL)
        assert report.recovered_norm == pytest.approx(abs(ip), abs=ATOL)


def test_inner_phase_orthogonal_not_measured():
    report = inner_product_phase([1.0, 0.0], [0.0, 1.0])
    assert report.outcome is None
    assert report.result is None


def test_inner_phase_rejects_length_mismatch_and_zero():
    with pytest.raises(ValueError, match="length mismatch"):
        inner_product_phase([1, 0], [1, 0, 0])
    with pytest.raises(ValueError, match="zero vector"):
        inner_product_phase([0, 0], [1, 0])


# --- matrix addition -------------------------------------------------------------

def test_add_identity_pair():
    report = matrix_add(np.eye(2), np.eye(2))
    np.testing.assert_allclose(report.result.matrix, 2 * np.eye(2), atol=1e-10)


def test_add_opposite_pair_not_measured():
    rng = np.random.default_rng(39)
    a = _rand(rng, 4, 4)
    report = matrix_add(a, -a)
    assert report.outcome is None
    assert report.result is None


def test_add_random_matches_oracle():
    rng = np.random.default_rng(40)
    for _ in range(20):
        a, b = _rand(rng, 4, 4), _rand(rng, 4, 4)
        report = matrix_add(a, b)
        np.testing.assert_allclose(
            _direction(report.result.matrix), _direction(a + b), atol=ATOL
        )
        np.testing.assert_allclose(report.result.matrix, a + b, atol=1e-9)


def test_add_shape_mismatch():
    with pytest.raises(ValueError, match="shape mismatch"):
        matrix_add(np.eye(2), np.eye(3))


# --- matrix multiplication --------------------------------------------------------

def test_mul_by_identity():
    rng = np.random.default_rng(41)
    a = _rand(rng, 4, 4)
    report = matrix_mul(a, np.eye(4))
    np.testing.assert_allclose(
        _direction(report.result.matrix), _direction(a), atol=ATOL
    )


def test_mul_nilpotent_not_measured():
    n = np.array([[0.0, 1.0], [0.0, 0.0]])
    report = matrix_mul(n, n)
    assert report.outcome is None
    assert report.result is None


def test_mul_random_matches_oracle():
    rng = np.random.default_rng(42)
    for _ in range(20):
        a, b = _rand(rng, 4, 4), _rand(rng, 4, 4)
        report = matrix_mul(a, b)
        np.testing.assert_allclose(
            _direction(report.result.matrix), _direction(a @ b), atol=ATOL
        )
        np.testing.assert_allclose(report.result.matrix, a @ b, atol=1e-9)


def test_mul_rectangular_shapes():
    rng = np.random.default_rng(43)
    a, b = _rand(rng, 2, 4), _rand(rng, 4, 3)
    report = matrix_mul(a, b)
    assert report.result.matrix.shape == (2, 3)
    np.testing.assert_allclose(report.result.matrix, a @ b, atol=1e-9)


# --- determinant phase ---------------------------------------------------------------

def test_det_phase_identity():
    report = determinant_phase(np.eye(3))
    assert report.result == pytest.approx(1.0, abs=1e-12)


def test_det_phase_imaginary_diag():
    report = determinant_phase(np.diag([1j, 1.0]))
    assert report.result == pytest.approx(1j, abs=1e-12)


def test_det_phase_random_matches_lu_oracle():
    rng = np.random.default_rng(44)
    for _ in range(20):
        a = _rand(rng, 4, 4)
        report = determinant_phase(a)
        d = det_lu(a)
        assert abs(report.result - d / abs(d)) < ATOL
        assert abs(abs(report.result) - 1.0) < 1e-12
        assert report.recovered_norm == pytest.approx(abs(d), rel=1e-10)


def test_det_phase_scale_invariant_but_weight_scales():
    rng = np.random.default_rng(45)
    a = _rand(rng, 4, 4)
    base = determinant_phase(a)
    for c in (0.5, 2.0):
        scaled = determinant_phase(c * a)
        assert abs(scaled.result - base.result) < 1e-12
        assert scaled.branch_weight / base.branch_weight == pytest.approx(
            c ** 8, rel=1e-9
        )


def test_det_phase_singular_not_measured():
    report = determinant_phase([[1.0, 2.0], [2.0, 4.0]])
    assert report.outcome is None


def test_det_phase_exponent_headroom():
    with pytest.raises(ValueError, match="scale_exponent"):
        determinant_phase(100.0 * np.eye(2), scale_exponent=2)


# --- matrix inversion ------------------------------------------------------------------

def test_inverse_identity():
    report = matrix_inverse(np.eye(2))
    np.testing.assert_allclose(report.result.matrix, np.eye(2), atol=1e-10)


def test_inverse_diagonal_direction():
    report = matrix_inverse(np.diag([2.0, 4.0]))
    np.testing.assert_allclose(
        _direction(report.result.matrix), _direction(np.diag([0.5, 0.25])), atol=ATOL
    )


def test_inverse_random_residual():
    rng = np.random.default_rng(46)
    for _ in range(20):
        a = _rand(rng, 4, 4)
        report = matrix_inverse(a)
        assert np.max(np.abs(report.result.matrix @ a - np.eye(4))) < 1e-8
        oracle = inverse_gj(a).value
        assert report.recovered_norm == pytest.approx(
            float(np.linalg.norm(oracle)), rel=1e-9
        )


def test_inverse_singular_raises():
    with pytest.raises(SingularMatrixError):
        matrix_inverse([[1.0, 2.0], [2.0, 4.0]])


def test_inverse_ill_conditioned_raises():
    with pytest.raises(SingularMatrixError, match="condition"):
        matrix_inverse(np.diag([1.0, 1e-10]))


# --- linear contraction stage --------------------------------------------------------------

def test_linear_stage_identity_matrix():
    report = linear_stage(np.eye(2), [1.0, 0.0])
    np.testing.assert_allclose(report.result.matrix, [1.0, 0.0], atol=1e-10)


def test_linear_stage_orthogonal_not_measured():
    a = np.array([[1.0, 0.0], [1.0, 0.0]])
    report = linear_stage(a, [0.0, 1.0])
    assert report.outcome is None


def test_linear_stage_random_matches_oracle():
    rng = np.random.default_rng(47)
    for _ in range(20):
        a, b = _rand(rng, 4, 4), _rand(rng, 4)
        report = linear_stage(a, b)
        np.testing.assert_allclose(
            _direction(report.result.matrix), _direction(a @ b), atol=ATOL
        )
        np.testing.assert_allclose(report.result.matrix, a @ b, atol=1e-9)


# --- sampled mode and the measurement benchmark ------------------------------------------------

def _single_column(n_r: int) -> np.ndarray:
    column = np.zeros((4, 2 ** n_r))
    column[:, min(1, 2 ** n_r - 1)] = [0.5, -0.5, 0.5, 0.5]
    return column


def test_bench_single_column_probabilities():
    encoded = [encode_rc(_single_column(n_r)) for n_r in (1, 2, 3)]
    rows = naive_success_bench(encoded, trials=10_000, master_seed=0)
    for row, n_r in zip(rows, (1, 2, 3)):
        assert row.analytic_p == 2.0 ** (-n_r)
        sigma = np.sqrt(row.analytic_p * (1 - row.analytic_p) / 10_000)
        assert abs(row.empirical_p - row.analytic_p) <= 3 * sigma
        assert row.controlled_success_rate == 1.0


def test_bench_uniform_matrix_always_succeeds():
    a = np.full((2, 4), np.sqrt(1 / 8))
    row = naive_success_bench(encode_rc(a), trials=200, master_seed=1)[0]
    assert row.analytic_p == pytest.approx(1.0, abs=1e-12)
    assert row.empirical_p == 1.0


def test_bench_log_slope_is_minus_one():
    rows = naive_success_bench(
        [encode_rc(_single_column(n_r)) for n_r in range(2, 7)],
        trials=10, master_seed=2,
    )
    logs = [np.log2(r.analytic_p) for r in rows]
    diffs = np.diff(logs)
    np.testing.assert_allclose(diffs, -1.0, atol=1e-12)


def test_sampled_mode_success_matches_ideal_post_state():
    rng = np.random.default_rng(48)
    a = _rand(rng, 4, 4)
    encoded = encode_rc(a)
    ideal = row_sum(encoded, mode="ideal")
    # scan seeds until the sampled draw hits the labeled branch
    for seed in range(50):
        sampled = row_sum(encoded, mode="sampled", seed=seed)
        if sampled.outcome == 1:
            np.testing.assert_allclose(
                sampled.final_state.amplitudes, ideal.final_state.amplitudes,
                atol=1e-12,
            )
            np.testing.assert_allclose(
                sampled.result.matrix, ideal.result.matrix, atol=1e-10
            )
            break
    else:
        pytest.fail("sampled mode never succeeded in 50 seeds")


def test_sampled_mode_failure_rate_tracks_branch_weight():
    encoded = encode_rc(_single_column(3))  # labeled weight 1/8
    failures = sum(
        1 for seed in range(400)
        if row_sum(encoded, mode="sampled", seed=seed).outcome == 0
    )
    sigma = np.sqrt((7 / 8) * (1 / 8) / 400)
    assert abs(failures / 400 - 7 / 8) <= 3 * sigma


def test_mode_validation():
    with pytest.raises(ValueError, match="mode"):
        row_sum(encode_rc(np.eye(2)), mode="bogus")


def test_decode_rc_reads_row_sum_post_state():
    # the post-measurement state decodes like any other RC-shaped state: the
    # row sums sit in column 0 with every ancilla in one basis state
    rng = np.random.default_rng(53)
    a = _rand(rng, 4, 4)
    report = row_sum(encode_rc(a))
    from qlasim import decode_rc

    dec = decode_rc(report.final_state, rows=4, cols=1)
    np.testing.assert_allclose(
        dec.matrix.ravel(), _direction(row_sums(a)), atol=1e-10
    )


def test_labeled_sector_payload_purity_mid_pipeline():
    # inside the label=1 sector of a product pipeline, every non-payload
    # register sits at its documented basis value (inner indexes 0, aux 0,
    # mark 1), so the payload block is the whole story
    rng = np.random.default_rng(54)
    a, b = _rand(rng, 4, 4), _rand(rng, 4, 4)
    report = matrix_mul(a, b)
    layout = report.final_state.layout
    nd = report.final_state.amplitudes.reshape(
        [1 << layout.width(nm) for nm in layout.names]
    )
    # axes: row, icol, irow, col, aux, mark, label, flag
    labeled = nd[:, :, :, :, :, :, 1, 1].copy()
    labeled[:, 0, 0, :, 0, 1] = 0.0
    assert np.all(labeled == 0)


def test_pipelines_are_pure_given_seed():
    rng = np.random.default_rng(49)
    a, b = _rand(rng, 4, 4), _rand(rng, 4, 4)
    first = matrix_add(a, b, seed=5)
    second = matrix_add(a, b, seed=5)
    np.testing.assert_array_equal(
        first.final_state.amplitudes, second.final_state.amplitudes
    )
    np.testing.assert_array_equal(first.result.matrix, second.result.matrix)
