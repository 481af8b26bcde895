import numpy as np
import pytest

from targetkit import (
    COMPLETION_GAP_NOTE,
    COMPLEX_SYMMETRIC,
    HERMITIAN,
    INVERTIBLE,
    INVERTIBLE_HERMITIAN,
    NORMAL_VECTOR,
    ORTHOGONAL_PROJECTION,
    POSITIVE_DEFINITE,
    POSITIVE_SEMIDEFINITE,
    REFLECTION,
    UNCONSTRAINED,
    UNITARY,
    BadFreeParameterError,
    InfeasibleError,
    LambdaSearchError,
    RankProvisoError,
    ShapeError,
    TolerancePolicy,
    ZeroTargetError,
    ZeroVectorError,
    check,
    completion_blocks,
    completion_gap,
    normal_two_point,
    solution_family,
    solve_complex_symmetric,
    solve_hermitian,
    solve_invertible,
    solve_invertible_hermitian,
    solve_normal_two_point,
    solve_normal_vector,
    solve_pd,
    solve_projection,
    solve_psd,
    solve_reflection,
    solve_unconstrained,
    solve_unitary,
    solve_unitary_polar,
    verify_property,
    verify_targeting,
)
from targetkit import InstanceSpec, generate_instance

COL = lambda *vals: np.array(vals, dtype=float).reshape(-1, 1)

E1 = COL(1, 0)
E2 = COL(0, 1)


def assert_solution(sol, X, Y, prop):
    assert verify_targeting(sol.A, X, Y) <= 1e-9
    assert verify_property(sol.A, prop).passed
    assert sol.residual <= 1e-9


class TestCompletionBlocks:
    def test_partition_shapes_and_rank_identity(self):
        rng = np.random.default_rng(1)
        for seed in range(25):
            m = int(rng.integers(1, 6))
            n = int(rng.integers(1, m + 1))
            spec = InstanceSpec(property=HERMITIAN, m=m, n=n, seed=seed, field="complex")
            X, Y, _ = generate_instance(spec)
            f, blocks = completion_blocks(X, Y)
            r = f.rank
            assert blocks.Z.shape == (m, r)
            assert blocks.H.shape == (r, r)
            assert blocks.L.shape == (m - r, r)
            # feasible pairs have equal null spaces, so the first block
            # carries the full rank of the target
            from targetkit import numerical_rank

            assert numerical_rank(blocks.B1) == numerical_rank(Y)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            completion_blocks(np.eye(2), np.eye(3))


class TestUnconstrained:
    def test_minimal_norm_solution_frozen(self):
        X = np.array([[1.0, 0.0], [0.0, 0.0]])
        sol = solve_unconstrained(X, 2.0 * X)
        assert np.allclose(sol.A, np.array([[2.0, 0.0], [0.0, 0.0]]), atol=1e-14)

    def test_free_term_spans_null_range(self):
        rng = np.random.default_rng(2)
        X = np.array([[1.0], [0.0]])
        Y = np.array([[3.0], [4.0]])
        for _ in range(20):
            Z = rng.standard_normal((2, 2))
            sol = solve_unconstrained(X, Y, Z_free=Z)
            assert_solution(sol, X, Y, UNCONSTRAINED)

    def test_bad_free_parameter_shape(self):
        with pytest.raises(BadFreeParameterError):
            solve_unconstrained(E1, E2, Z_free=np.eye(3))

    def test_infeasible_raises_with_report(self):
        X = np.array([[1.0, 0.0], [0.0, 0.0]])
        Y = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(InfeasibleError) as exc:
            solve_unconstrained(X, Y)
        assert "null-space-inclusion" in str(exc.value)
        assert not exc.value.report.feasible

    def test_zero_source_zero_target(self):
        sol = solve_unconstrained(np.zeros((2, 2)), np.zeros((2, 2)))
        assert np.array_equal(sol.A, np.zeros((2, 2)))


class TestSolutionFamily:
    def test_family_describes_all_solutions(self):
        rng = np.random.default_rng(3)
        X = rng.standard_normal((4, 2))
        A_true = rng.standard_normal((4, 4))
        Y = A_true @ X
        A0, N = solution_family(X, Y)
        assert np.allclose(A0 @ X, Y, atol=1e-12)
        assert np.allclose(N @ X, 0, atol=1e-12)
        assert np.allclose(N @ N, N, atol=1e-12)
        for _ in range(5):
            Z = rng.standard_normal((4, 4))
            assert np.allclose((A0 + Z @ N) @ X, Y, atol=1e-11)
        # the true generator is recoverable from the family
        Z = A_true - A0
        assert np.allclose(A0 + (Z @ N), A_true @ (X @ np.linalg.pinv(X)) + Z @ N, atol=1e-11)


class TestInvertible:
    def test_rotation_frozen(self):
        sol = solve_invertible(E1, E2)
        assert np.allclose(sol.A, np.array([[0.0, -1.0], [1.0, 0.0]]), atol=1e-14)
        assert_solution(sol, E1, E2, INVERTIBLE)

    def test_rank_deficient_pairs(self):
        for seed in range(10):
            spec = InstanceSpec(
                property=INVERTIBLE, m=5, n=4, seed=seed, field="complex", rank_deficiency=2
            )
            X, Y, _ = generate_instance(spec)
            sol = solve_invertible(X, Y)
            assert_solution(sol, X, Y, INVERTIBLE)


class TestHermitian:
    def test_swap_pair_frozen(self):
        sol = solve_hermitian(E1, E2)
        assert np.allclose(sol.A, np.array([[0.0, 1.0], [1.0, 0.0]]), atol=1e-14)
        assert sol.free_params["lam"] == 0.0

    def test_lambda_free_moves_border(self):
        for lam in [-2.0, 0.5, 3.0]:
            sol = solve_hermitian(E1, E2, lambda_free=lam)
            assert sol.A[1, 1] == pytest.approx(lam)
            assert_solution(sol, E1, E2, HERMITIAN)

    def test_complex_lambda_rejected(self):
        with pytest.raises(BadFreeParameterError):
            solve_hermitian(E1, E2, lambda_free=1.0j)

    def test_real_data_real_output(self):
        spec = InstanceSpec(property=HERMITIAN, m=4, n=2, seed=5, field="real")
        X, Y, _ = generate_instance(spec)
        sol = solve_hermitian(X, Y)
        assert not np.iscomplexobj(sol.A)


class TestInvertibleHermitian:
    def test_swap_pair_frozen_lambda_choice(self):
        sol = solve_invertible_hermitian(E1, E2)
        assert sol.free_params["lam"] == pytest.approx(0.5)
        assert np.allclose(sol.A, np.array([[0.0, 1.0], [1.0, 0.5]]), atol=1e-14)
        assert_solution(sol, E1, E2, INVERTIBLE_HERMITIAN)

    def test_full_rank_source_needs_no_border(self):
        X = np.eye(2)
        Y = np.array([[2.0, 1.0], [1.0, -1.0]])
        sol = solve_invertible_hermitian(X, Y)
        assert sol.free_params["lam"] is None
        assert np.allclose(sol.A, Y, atol=1e-14)

    def test_floor_failure_reported_not_hidden(self):
        loose = TolerancePolicy(residual_tol=1.0)
        with pytest.raises(LambdaSearchError):
            solve_invertible_hermitian(E1, E2, tol=loose)


class TestSemidefinite:
    def test_psd_boundary_frozen(self):
        X, Y = E1, COL(1, 1)
        sol = solve_psd(X, Y)
        assert np.allclose(sol.A, np.ones((2, 2)), atol=1e-14)
        eigs = np.linalg.eigvalsh(sol.A)
        assert eigs[0] == pytest.approx(0.0, abs=1e-14)
        assert eigs[1] == pytest.approx(2.0)

    def test_pd_margin_frozen(self):
        X, Y = E1, COL(1, 1)
        sol = solve_pd(X, Y)
        assert np.allclose(sol.A, np.array([[1.0, 1.0], [1.0, 3.0]]), atol=1e-14)
        assert np.linalg.eigvalsh(sol.A)[0] > 0.5

    def test_pd_full_rank_shortcut(self):
        Y = np.array([[2.0, 1.0], [1.0, 2.0]])
        sol = solve_pd(np.eye(2), Y)
        assert np.allclose(sol.A, Y, atol=1e-14)

    def test_psd_infeasible_negative_product(self):
        with pytest.raises(InfeasibleError):
            solve_psd(E1, -E1)


class TestUnitary:
    def test_swap_pair_frozen(self):
        sol = solve_unitary(E1, E2)
        assert np.allclose(sol.A, np.array([[0.0, 1.0], [1.0, 0.0]]), atol=1e-14)

    def test_polar_route_identity_on_equal_pair(self):
        X = np.array([[3.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        sol = solve_unitary_polar(X, X)
        assert np.allclose(sol.A, np.eye(3), atol=1e-14)

    def test_routes_agree_on_verdict_not_necessarily_matrix(self):
        for seed in range(10):
            spec = InstanceSpec(property=UNITARY, m=4, n=2, seed=seed, field="complex")
            X, Y, _ = generate_instance(spec)
            a = solve_unitary(X, Y)
            b = solve_unitary_polar(X, Y)
            assert_solution(a, X, Y, UNITARY)
            assert_solution(b, X, Y, UNITARY)

    def test_infeasible_gram_mismatch(self):
        with pytest.raises(InfeasibleError):
            solve_unitary(E1, 2 * E1)


class TestReflection:
    def test_sign_flip_frozen(self):
        sol = solve_reflection(E1, -E1)
        assert np.allclose(sol.A, np.diag([-1.0, 1.0]), atol=1e-14)

    def test_swap_frozen(self):
        sol = solve_reflection(E1, E2)
        assert np.allclose(sol.A, np.array([[0.0, 1.0], [1.0, 0.0]]), atol=1e-12)

    def test_fixed_pair_gives_identity(self):
        X = COL(1, 2)
        sol = solve_reflection(X, X)
        assert np.allclose(sol.A, np.eye(2), atol=1e-14)


class TestProjection:
    def test_projects_onto_target_range_frozen(self):
        sol = solve_projection(COL(1, 1), COL(1, 0))
        assert np.allclose(sol.A, np.diag([1.0, 0.0]), atol=1e-14)

    def test_zero_target_rejected(self):
        with pytest.raises(ZeroTargetError):
            solve_projection(COL(1, 0), COL(0, 0))


class TestComplexSymmetric:
    def test_imaginary_diagonal_frozen(self):
        sol = solve_complex_symmetric(COL(1, 0), np.array([[1j], [0.0]]))
        assert np.allclose(sol.A, np.diag([1j, 0.0]), atol=1e-14)

    def test_free_corner_soundness(self):
        rng = np.random.default_rng(4)
        spec = InstanceSpec(property=COMPLEX_SYMMETRIC, m=5, n=2, seed=1, field="complex")
        X, Y, _ = generate_instance(spec)
        r = 2
        for _ in range(20):
            G = rng.standard_normal((5 - r, 5 - r)) + 1j * rng.standard_normal((5 - r, 5 - r))
            G = (G + G.T) / 2
            sol = solve_complex_symmetric(X, Y, G_free=G)
            assert_solution(sol, X, Y, COMPLEX_SYMMETRIC)

    def test_non_symmetric_corner_rejected(self):
        spec = InstanceSpec(property=COMPLEX_SYMMETRIC, m=4, n=2, seed=2, field="complex")
        X, Y, _ = generate_instance(spec)
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(BadFreeParameterError):
            solve_complex_symmetric(X, Y, G_free=bad)

    def test_full_rank_source_leaves_no_corner(self):
        X = np.eye(2)
        Y = np.array([[1.0, 2.0], [2.0, -1.0]])
        sol = solve_complex_symmetric(X, Y)
        assert np.allclose(sol.A, Y, atol=1e-14)
        with pytest.raises(BadFreeParameterError):
            solve_complex_symmetric(X, Y, G_free=np.zeros((1, 1)))


class TestNormalTwoPoint:
    def test_projector_eigenvalues_frozen(self):
        sol = solve_normal_two_point(COL(1, 1), COL(1, 0), 1.0, 0.0)
        assert np.allclose(sol.A, np.diag([1.0, 0.0]), atol=1e-12)

    def test_reflection_eigenvalues_frozen(self):
        sol = solve_normal_two_point(E1, E2, 1.0, -1.0)
        assert np.allclose(sol.A, np.array([[0.0, 1.0], [1.0, 0.0]]), atol=1e-12)

    def test_leftover_space_gets_first_eigenvalue(self):
        X = COL(1, 0, 0)
        Y = 2.0 * X
        sol = solve_normal_two_point(X, Y, 2.0, 5.0)
        eigs = np.sort_complex(np.linalg.eigvals(sol.A))
        assert np.allclose(eigs, [2.0, 2.0, 2.0], atol=1e-12)

    def test_complex_eigenvalues(self):
        spec = InstanceSpec(
            property=normal_two_point(1j, -1j), m=4, n=3, seed=7, field="complex"
        )
        X, Y, _ = generate_instance(spec)
        sol = solve_normal_two_point(X, Y, 1j, -1j)
        assert_solution(sol, X, Y, normal_two_point(1j, -1j))

    def test_real_data_real_output(self):
        spec = InstanceSpec(
            property=normal_two_point(1.0, -2.0), m=5, n=3, seed=8, field="real"
        )
        X, Y, _ = generate_instance(spec)
        sol = solve_normal_two_point(X, Y, 1.0, -2.0)
        assert not np.iscomplexobj(sol.A)

    def test_rank_proviso_error_carries_forced_scale(self):
        with pytest.raises(RankProvisoError) as exc:
            solve_normal_two_point(np.eye(2), 2.0 * np.eye(2), 2.0, 0.0)
        assert exc.value.unique_solution_scale == pytest.approx(2.0)
        assert exc.value.report is not None
        with pytest.raises(RankProvisoError) as exc:
            solve_normal_two_point(np.eye(2), np.zeros((2, 2)), 2.0, 0.0)
        assert exc.value.unique_solution_scale == pytest.approx(0.0)

    def test_plain_infeasibility_still_infeasible_error(self):
        with pytest.raises(InfeasibleError):
            solve_normal_two_point(E1, 2 * E1, 1.0, 0.0)


class TestNormalVector:
    def test_scaled_unitary(self):
        x = COL(3, 4)
        y = np.array([[0.0], [10.0]])
        sol = solve_normal_vector(x, y)
        s = np.linalg.svd(sol.A, compute_uv=False)
        assert np.allclose(s, [2.0, 2.0], atol=1e-12)
        assert_solution(sol, x, y, NORMAL_VECTOR)

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVectorError):
            solve_normal_vector(COL(0, 0), COL(1, 0))


class TestDegenerateZeroSource:
    @pytest.mark.parametrize(
        "solver,prop",
        [
            (solve_invertible, INVERTIBLE),
            (solve_hermitian, HERMITIAN),
            (solve_invertible_hermitian, INVERTIBLE_HERMITIAN),
            (solve_psd, POSITIVE_SEMIDEFINITE),
            (solve_pd, POSITIVE_DEFINITE),
            (solve_unitary, UNITARY),
            (solve_unitary_polar, UNITARY),
            (solve_complex_symmetric, COMPLEX_SYMMETRIC),
        ],
        ids=lambda x: getattr(x, "__name__", getattr(x, "kind", "")),
    )
    def test_identity_witness(self, solver, prop):
        Z = np.zeros((3, 2))
        sol = solver(Z, Z)
        assert np.array_equal(sol.A, np.eye(3))
        assert sol.free_params == {"degenerate_zero_source": True}
        assert verify_property(sol.A, prop).passed

    def test_two_point_scales_identity(self):
        Z = np.zeros((2, 2))
        sol = solve_normal_two_point(Z, Z, 3.0, 1.0)
        assert np.allclose(sol.A, 3.0 * np.eye(2))

    def test_zero_source_nonzero_target_infeasible(self):
        with pytest.raises(InfeasibleError):
            solve_hermitian(np.zeros((2, 2)), np.eye(2))


class TestDeterminism:
    def test_bitwise_repeatability(self):
        spec = InstanceSpec(property=UNITARY, m=5, n=3, seed=99, field="complex")
        X, Y, _ = generate_instance(spec)
        a = solve_unitary(X, Y).A
        b = solve_unitary(X.copy(), Y.copy()).A
        assert np.array_equal(a, b)


class TestCompletionGap:
    def test_nilpotent_block_obstructed(self):
        B = np.array([[0.0, 1.0], [0.0, 0.0]])
        H, psd = completion_gap(B, np.zeros((2, 2)))
        assert np.allclose(H, np.diag([-1.0, 1.0]), atol=1e-15)
        assert not psd

    def test_cyclic_shift_gap_equals_corner(self):
        B = np.roll(np.eye(3), 1, axis=0)
        C = np.zeros((3, 3))
        C[0, 0] = 1.0
        H, psd = completion_gap(B, C)
        assert np.allclose(H, C, atol=1e-15)
        assert psd

    def test_normal_block_with_zero_corner_has_zero_gap(self):
        B = np.array([[1.0, 2.0], [2.0, -1.0]])
        H, psd = completion_gap(B, np.zeros((2, 2)))
        assert np.allclose(H, 0, atol=1e-15)
        assert psd

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            completion_gap(np.ones((2, 3)), np.ones((2, 3)))
        with pytest.raises(ShapeError):
            completion_gap(np.eye(2), np.eye(3))

    def test_note_documents_row_column_obstruction(self):
        assert "first row" in COMPLETION_GAP_NOTE
        assert "first column" in COMPLETION_GAP_NOTE
        assert "not sufficient" in COMPLETION_GAP_NOTE.lower()


class TestSolutionAudit:
    def test_returned_solutions_carry_their_own_deviations(self):
        spec = InstanceSpec(property=POSITIVE_DEFINITE, m=4, n=2, seed=3, field="real")
        X, Y, _ = generate_instance(spec)
        sol = solve_pd(X, Y)
        assert sol.residual <= 1e-12
        assert sol.property_deviation <= 1e-12
        assert sol.property.kind == "positive-definite"
