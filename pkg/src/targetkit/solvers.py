"""Constructive solvers: one per property class.

Every solver follows the same discipline: run the feasibility check and
refuse with the certificate when it fails, build the targeting matrix by
the class's explicit formula, then re-verify both the product residual
and the structural property before returning.  A solution object that
comes back from this module has already survived its own audit; if the
construction cannot meet tolerance, the solver raises instead of
returning something quietly wrong.

The completion-based constructions share one coordinate change: with
``X = V Sigma W*`` and ``Z = V* Y W1``, any candidate ``A = V B V*``
satisfies ``AX = Y`` exactly when the first ``r`` columns of ``B`` equal
``B1 = Z Sigma_r^{-1}``.  Choosing the remaining columns (or the bordered
blocks of ``B``) is where each property is won.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadFreeParameterError,
    InfeasibleError,
    LambdaSearchError,
    NotOrthonormalError,
    NumericFailureError,
    RankProvisoError,
    ShapeError,
)
from .feasibility import (
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
    FeasibilityReport,
    PropertyClass,
    _near_multiple,
    check,
    normal_two_point,
)
from .linalg import (
    DEFAULT_TOL,
    SvdFactors,
    TolerancePolicy,
    _block2,
    as_matrix,
    complete_orthonormal,
    is_zero_matrix,
    nearest_orthonormal,
    numerical_rank,
    orthogonal_projector,
    pseudoinverse,
    svd_partitioned,
)
from .verify import verify_property, verify_targeting

__all__ = [
    "TargetingSolution",
    "CompletionBlocks",
    "completion_blocks",
    "solve_unconstrained",
    "solution_family",
    "solve_invertible",
    "solve_hermitian",
    "solve_invertible_hermitian",
    "solve_psd",
    "solve_pd",
    "solve_unitary",
    "solve_unitary_polar",
    "solve_reflection",
    "solve_projection",
    "solve_complex_symmetric",
    "solve_normal_two_point",
    "solve_normal_vector",
    "completion_gap",
    "COMPLETION_GAP_NOTE",
]


@dataclass(frozen=True)
class TargetingSolution:
    """A verified targeting matrix together with its audit trail.

    ``free_params`` records every choice the construction made, enough to
    reproduce ``A`` deterministically.  ``residual`` is the relative
    targeting error and ``property_deviation`` the largest structural
    deviation measured by the independent verifier.
    """

    A: np.ndarray
    property: PropertyClass
    free_params: dict
    residual: float
    property_deviation: float


@dataclass(frozen=True)
class CompletionBlocks:
    """The shared blocks of the change-of-basis construction.

    ``Z = V* Y W1`` splits at the rank into ``Z1`` (top ``r`` rows) and
    ``Z2``; ``B1 = Z Sigma_r^{-1}`` splits the same way into ``H`` and
    ``L``.  Whenever the null spaces of source and target coincide,
    ``rank B1 = rank Y``.
    """

    Z: np.ndarray
    Z1: np.ndarray
    Z2: np.ndarray
    B1: np.ndarray
    H: np.ndarray
    L: np.ndarray


def completion_blocks(X, Y, tol: TolerancePolicy | None = None):
    """Compute ``(SvdFactors, CompletionBlocks)`` for a source/target pair."""
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    if X.shape != Y.shape:
        raise ShapeError(f"X and Y must have equal shapes, got {X.shape} and {Y.shape}")
    f = svd_partitioned(X, tol)
    Z = f.V.conj().T @ Y @ f.W1
    B1 = Z / f.sigma
    r = f.rank
    blocks = CompletionBlocks(Z=Z, Z1=Z[:r], Z2=Z[r:], B1=B1, H=B1[:r], L=B1[r:])
    return f, blocks


def _fro(a) -> float:
    return float(np.linalg.norm(a))


def _herm(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def _finalize(A, prop, X, Y, tol, free_params) -> TargetingSolution:
    A = as_matrix(A, "A")
    residual = verify_targeting(A, X, Y)
    report = verify_property(A, prop, tol)
    if residual > tol.residual_tol or not report.passed:
        failed = [c.name for c in report.conditions if not c.satisfied]
        raise NumericFailureError(
            f"constructed matrix failed its own audit for {prop.label()}: "
            f"residual={residual:.3e}"
            + (f", violated {failed}" if failed else "")
        )
    deviation = max((c.deviation for c in report.conditions), default=0.0)
    return TargetingSolution(
        A=A,
        property=prop,
        free_params=free_params,
        residual=residual,
        property_deviation=deviation,
    )


def _require_feasible(prop, X, Y, tol) -> FeasibilityReport:
    report = check(prop, X, Y, tol)
    if report.feasible:
        return report
    failed = [c for c in report.conditions if not c.satisfied]
    if prop.kind == "normal-two-point" and all(c.name == "rank-proviso" for c in failed):
        X = as_matrix(X, "X")
        Y = as_matrix(Y, "Y")
        scale = prop.lam if _near_multiple(Y, prop.lam, X, tol) else prop.mu
        if scale.imag == 0:
            scale = scale.real
        raise RankProvisoError(
            "the source is square and invertible with the target a scalar "
            f"multiple of it, so A = {scale} * I is the unique solution and "
            "no targeting matrix with a genuinely two-point spectrum exists",
            unique_solution_scale=scale,
            report=report,
        )
    raise InfeasibleError(report)


def _degenerate_identity(prop, X, Y, tol, scale=1.0) -> TargetingSolution:
    # numerically zero source (the check has already demanded a zero
    # target): a scalar matrix in the class is the canonical witness
    if isinstance(scale, complex) and scale.imag == 0:
        scale = scale.real
    A = scale * np.eye(X.shape[0])
    return _finalize(A, prop, X, Y, tol, {"degenerate_zero_source": True})


def _as_real_scalar(value, name: str) -> float:
    if isinstance(value, complex):
        if value.imag != 0:
            raise BadFreeParameterError(f"{name} must be real, got {value!r}")
        return float(value.real)
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise BadFreeParameterError(f"{name} must be a real scalar, got {value!r}") from exc


def _bordered(H, L, lam) -> np.ndarray:
    return _block2(H, L.conj().T, L, lam * np.eye(L.shape[0], dtype=np.result_type(H, L)))


def solve_unconstrained(X, Y, Z_free=None, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Minimal-norm solution ``Y X†`` plus an arbitrary null-range term.

    ``A = Y X† + Z (I - X X†)`` targets Y for every choice of ``Z``; the
    default ``Z = 0`` gives the pseudoinverse solution.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(UNCONSTRAINED, X, Y, tol)
    m = X.shape[0]
    A = Y @ pseudoinverse(X, tol)
    Z = None
    if Z_free is not None:
        Z = as_matrix(Z_free, "Z_free")
        if Z.shape != (m, m):
            raise BadFreeParameterError(f"Z_free must be {m}x{m}, got {Z.shape}")
        A = A + Z @ (np.eye(m) - orthogonal_projector(X, tol))
    return _finalize(A, UNCONSTRAINED, X, Y, tol, {"Z": Z})


def solution_family(X, Y, tol: TolerancePolicy | None = None):
    """The affine family of all solutions: ``{A0 + Z N : Z arbitrary}``.

    Returns ``(A0, N)`` with ``A0 = Y X†`` and ``N`` the orthogonal
    projector onto the orthogonal complement of ``col X``.  Every
    targeting matrix for the pair has the form ``A0 + Z N``, and every
    such matrix targets Y.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(UNCONSTRAINED, X, Y, tol)
    m = X.shape[0]
    A0 = Y @ pseudoinverse(X, tol)
    N = np.eye(m) - orthogonal_projector(X, tol)
    return A0, N


def solve_invertible(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Invertible targeting matrix via full-rank completion of ``B1``."""
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(INVERTIBLE, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(INVERTIBLE, X, Y, tol)
    f, blocks = completion_blocks(X, Y, tol)
    m, r = X.shape[0], f.rank
    B2 = None
    if r == m:
        B = blocks.B1
    else:
        B2 = svd_partitioned(blocks.B1, tol).V2
        if B2.shape[1] != m - r:
            raise NumericFailureError(
                "the first block lost rank numerically; cannot complete to an invertible matrix"
            )
        B = np.hstack([blocks.B1, B2])
    A = f.V @ B @ f.V.conj().T
    return _finalize(A, INVERTIBLE, X, Y, tol, {"B2": B2})


def solve_hermitian(X, Y, lambda_free=None, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Hermitian targeting matrix from the bordered block construction.

    ``B = [[H, L*], [L, lam I]]`` with ``lam`` any real number (default 0);
    feasibility makes ``H`` Hermitian, so ``B`` and hence ``A = V B V*``
    are Hermitian for every choice.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(HERMITIAN, X, Y, tol)
    lam = 0.0 if lambda_free is None else _as_real_scalar(lambda_free, "lambda_free")
    if is_zero_matrix(X, tol):
        return _degenerate_identity(HERMITIAN, X, Y, tol)
    f, blocks = completion_blocks(X, Y, tol)
    H = _herm(blocks.H)
    B = H if f.rank == X.shape[0] else _bordered(H, blocks.L, lam)
    A = f.V @ B @ f.V.conj().T
    return _finalize(A, HERMITIAN, X, Y, tol, {"lam": lam})


def _lambda_candidates(H, L, r) -> list:
    norm_h = float(np.linalg.norm(H, 2)) if H.size else 0.0
    norm_l = float(np.linalg.norm(L, 2)) if L.size else 0.0
    candidates = []
    for k in range(1, r + 2):
        denominator = max(norm_l**2, norm_h**2)
        if norm_h > 0.0 and denominator > 0.0:
            s = k * norm_h / denominator
            candidates += [1.0 / s, -1.0 / s]
        base = max(norm_h, norm_l) / k
        if base > 0.0:
            candidates += [base, -base]
    seen = set()
    return [c for c in candidates if not (c in seen or seen.add(c))]


def solve_invertible_hermitian(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Hermitian and invertible: the bordered construction with a searched scalar.

    ``det [[H, L*], [L, lam I]]`` vanishes for at most ``r`` values of
    ``1/lam``, so among the evaluated candidates (magnitudes derived from
    ``|H|`` and ``|L|``, both signs) a nonsingular choice must exist; the
    candidate maximizing the smallest singular value wins.  A best
    candidate below ``residual_tol * |B|`` means the data is too badly
    conditioned to certify, and that is reported as a search failure
    rather than infeasibility.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(INVERTIBLE_HERMITIAN, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(INVERTIBLE_HERMITIAN, X, Y, tol)
    f, blocks = completion_blocks(X, Y, tol)
    m, r = X.shape[0], f.rank
    H = _herm(blocks.H)
    lam = None
    if r == m:
        B = H
    else:
        candidates = _lambda_candidates(H, blocks.L, r)
        if not candidates:
            raise LambdaSearchError("no usable bordering scalar: both blocks vanish")
        best_smin = -1.0
        best_smax = 0.0
        for lam_c in candidates:
            s = np.linalg.svd(_bordered(H, blocks.L, lam_c), compute_uv=False)
            if float(s[-1]) > best_smin:
                best_smin, best_smax, lam = float(s[-1]), float(s[0]), lam_c
        if best_smin <= tol.residual_tol * best_smax:
            raise LambdaSearchError(
                f"every candidate left the completion nearly singular "
                f"(best sigma_min/sigma_max = {best_smin / best_smax:.3e})"
            )
        B = _bordered(H, blocks.L, lam)
    A = f.V @ B @ f.V.conj().T
    return _finalize(A, INVERTIBLE_HERMITIAN, X, Y, tol, {"lam": lam})


def solve_psd(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Positive semidefinite targeting via the smallest workable border.

    The border scalar is exactly the largest eigenvalue of ``L H† L*``;
    the Schur-complement congruence then certifies ``B`` (and so ``A``)
    positive semidefinite on the boundary.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(POSITIVE_SEMIDEFINITE, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(POSITIVE_SEMIDEFINITE, X, Y, tol)
    f, blocks = completion_blocks(X, Y, tol)
    H = _herm(blocks.H)
    lam = None
    if f.rank == X.shape[0]:
        B = H
    else:
        L = blocks.L
        M = _herm(L @ pseudoinverse(H, tol) @ L.conj().T)
        lam = max(0.0, float(np.linalg.eigvalsh(M)[-1]))
        B = _bordered(H, L, lam)
    A = f.V @ B @ f.V.conj().T
    return _finalize(A, POSITIVE_SEMIDEFINITE, X, Y, tol, {"lam": lam})


def solve_pd(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Positive definite targeting: border strictly above the PSD threshold.

    Feasibility makes ``H`` positive definite; ``lam`` exceeds the
    largest eigenvalue of ``L H^{-1} L*`` by a factor of two plus an
    absolute unit, so the Schur complement keeps a quantified margin.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(POSITIVE_DEFINITE, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(POSITIVE_DEFINITE, X, Y, tol)
    f, blocks = completion_blocks(X, Y, tol)
    m, r = X.shape[0], f.rank
    H = _herm(blocks.H)
    if numerical_rank(H, tol) < r:
        raise NumericFailureError("the leading block lost definiteness numerically")
    lam = None
    if r == m:
        B = H
    else:
        L = blocks.L
        K = np.linalg.solve(H, L.conj().T)
        lam = 2.0 * float(np.linalg.eigvalsh(_herm(L @ K))[-1]) + 1.0
        B = _bordered(H, L, lam)
    A = f.V @ B @ f.V.conj().T
    return _finalize(A, POSITIVE_DEFINITE, X, Y, tol, {"lam": lam})


def solve_unitary(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Unitary targeting by orthonormal completion of ``B1``.

    Equal Gram matrices make the columns of ``B1`` orthonormal (they are
    polished to machine precision first); completing them to a unitary
    and conjugating back gives ``A``.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(UNITARY, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(UNITARY, X, Y, tol)
    f, blocks = completion_blocks(X, Y, tol)
    B = complete_orthonormal(nearest_orthonormal(blocks.B1), tol)
    A = f.V @ B @ f.V.conj().T
    return _finalize(A, UNITARY, X, Y, tol, {"completion": B[:, f.rank :]})


def solve_unitary_polar(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Unitary targeting through matched orthonormal frames.

    Source and target share the positive factor of their polar
    decompositions (equal Gram matrices), so each determines an
    orthonormal frame for the same ``r`` inner coordinates:
    ``X = C_U (Sigma_r W1*)`` and ``Y = C_V (Sigma_r W1*)``.  Completing
    both frames and mapping one onto the other yields ``A = V U*``.  An
    independent route from :func:`solve_unitary`; the two outputs may
    differ but both verify.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(UNITARY, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(UNITARY, X, Y, tol)
    f = svd_partitioned(X, tol)
    source_frame = complete_orthonormal(f.V1, tol)
    target_frame = complete_orthonormal(nearest_orthonormal(Y @ f.W1 / f.sigma), tol)
    A = target_frame @ source_frame.conj().T
    return _finalize(
        A,
        UNITARY,
        X,
        Y,
        tol,
        {
            "source_completion": source_frame[:, f.rank :],
            "target_completion": target_frame[:, f.rank :],
        },
    )


def solve_reflection(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Reflection (Hermitian involution) targeting: ``A = I - 2 P``.

    ``P`` projects onto ``col(X - Y)``; feasibility makes ``col(X + Y)``
    orthogonal to it, which is re-asserted at runtime, so ``A`` fixes the
    sum and negates the difference.  For a single column this is a scalar
    multiple pattern of the classical elementary reflector.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(REFLECTION, X, Y, tol)
    diff = X - Y
    total = X + Y
    dev = _fro(total.conj().T @ diff) / max(1.0, _fro(X) ** 2 + _fro(Y) ** 2)
    if dev > tol.residual_tol:
        raise NumericFailureError(
            f"col(X+Y) and col(X-Y) are not numerically orthogonal (deviation {dev:.3e})"
        )
    A = np.eye(X.shape[0]) - 2.0 * orthogonal_projector(diff, tol)
    return _finalize(A, REFLECTION, X, Y, tol, {})


def solve_projection(X, Y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Orthogonal-projection targeting: project onto the target's range."""
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(ORTHOGONAL_PROJECTION, X, Y, tol)
    A = orthogonal_projector(Y, tol)
    return _finalize(A, ORTHOGONAL_PROJECTION, X, Y, tol, {})


def solve_complex_symmetric(
    X, Y, G_free=None, tol: TolerancePolicy | None = None
) -> TargetingSolution:
    """Complex-symmetric targeting via the transposed coordinate frame.

    In the frame ``F = [[S1, S2^T], [S2, G]]`` with ``S1`` forced
    symmetric by feasibility, ``A = conj(V) F V*`` is symmetric and
    targets Y for every complex symmetric corner ``G`` (default 0).
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(COMPLEX_SYMMETRIC, X, Y, tol)
    if is_zero_matrix(X, tol):
        return _degenerate_identity(COMPLEX_SYMMETRIC, X, Y, tol)
    f = svd_partitioned(X, tol)
    m, r = X.shape[0], f.rank
    core = Y @ f.W1 / f.sigma
    S1 = f.V1.T @ core
    S1 = (S1 + S1.T) / 2
    S2 = f.V2.T @ core
    if r == m:
        if G_free is not None:
            raise BadFreeParameterError("a full-rank source leaves no free corner")
        G = None
        F = S1
    else:
        if G_free is None:
            G = np.zeros((m - r, m - r), dtype=S2.dtype)
        else:
            G = as_matrix(G_free, "G_free")
            if G.shape != (m - r, m - r):
                raise BadFreeParameterError(f"G_free must be {m - r}x{m - r}, got {G.shape}")
            sym_dev = _fro(G - G.T) / max(1.0, _fro(G))
            if sym_dev > tol.sym_tol:
                raise BadFreeParameterError(
                    f"G_free must be complex symmetric (deviation {sym_dev:.3e})"
                )
        F = _block2(S1, S2.T, S2, G)
    A = f.V.conj() @ F @ f.V.conj().T
    return _finalize(A, COMPLEX_SYMMETRIC, X, Y, tol, {"G": G})


def _col_basis(M, tol) -> np.ndarray:
    if is_zero_matrix(M, tol):
        return np.zeros((M.shape[0], 0), dtype=M.dtype)
    return svd_partitioned(M, tol).V1


def solve_normal_two_point(X, Y, lam, mu, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Normal targeting with spectrum inside ``{lam, mu}``.

    Writes ``E = Y - mu X`` and ``F = Y - lam X`` (orthogonal ranges, by
    feasibility), projects onto each, and fills the leftover subspace
    with the ``lam`` eigenvalue: ``A = lam P + mu Q + lam R``.  Real data
    with real eigenvalues stays real.  The square-invertible corner where
    the target is a scalar multiple of the source is refused with the
    forced scalar in the error payload.
    """
    tol = tol or DEFAULT_TOL
    prop = normal_two_point(lam, mu)
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    _require_feasible(prop, X, Y, tol)
    lam, mu = prop.lam, prop.mu
    if lam.imag == 0 and mu.imag == 0:
        lam, mu = lam.real, mu.real
    if is_zero_matrix(X, tol):
        return _degenerate_identity(prop, X, Y, tol, scale=lam)
    m = X.shape[0]
    basis_e = _col_basis(Y - mu * X, tol)
    basis_f = _col_basis(Y - lam * X, tol)
    P = basis_e @ basis_e.conj().T
    Q = basis_f @ basis_f.conj().T
    T = np.hstack([basis_e, basis_f])
    if T.shape[1] >= m:
        R = np.zeros((m, m), dtype=T.dtype)
    else:
        try:
            completed = complete_orthonormal(T, tol)
            rest = completed[:, T.shape[1] :]
            R = rest @ rest.conj().T
        except (NotOrthonormalError, ShapeError):
            # near-threshold cross terms between the two range bases: fall
            # back to the complement projector of their joint span
            R = np.eye(m) - orthogonal_projector(T, tol)
    A = lam * P + mu * Q + lam * R
    return _finalize(A, prop, X, Y, tol, {})


def solve_normal_vector(x, y, tol: TolerancePolicy | None = None) -> TargetingSolution:
    """Normal targeting for single-column data: a scaled unitary.

    Sends ``x/|x|`` to ``y/|y|`` unitarily and multiplies by the norm
    ratio; scalar multiples of unitaries are normal.
    """
    tol = tol or DEFAULT_TOL
    x = as_matrix(x, "x")
    y = as_matrix(y, "y")
    _require_feasible(NORMAL_VECTOR, x, y, tol)
    norm_x = _fro(x)
    norm_y = _fro(y)
    inner = solve_unitary(x / norm_x, y / norm_y, tol)
    A = (norm_y / norm_x) * inner.A
    return _finalize(A, NORMAL_VECTOR, x, y, tol, {"unitary_factor": inner.A})


COMPLETION_GAP_NOTE = (
    "Necessary, not sufficient: a normal completion [[B, D], [C, E]] forces "
    "D D* = B*B - B B* + C*C, so that gap matrix must be positive semidefinite, "
    "and every row of a normal matrix must match its column in Euclidean norm. "
    "For 2x2 blocks the positive semidefinite gap is also sufficient, but from "
    "3x3 blocks up it is not: with B the 3x3 cyclic shift and C = e1 e1^T the "
    "gap equals C and is positive semidefinite, yet the completion equations "
    "leave the first row and first column of any candidate at unequal norms, "
    "so no normal completion exists."
)


def completion_gap(B, C, tol: TolerancePolicy | None = None):
    """Diagnostic gap ``B*B - B B* + C*C`` for normal completions.

    Returns the Hermitian gap matrix and whether it is positive
    semidefinite within ``psd_tol``; see :data:`COMPLETION_GAP_NOTE` for
    what a passing verdict does and does not imply.
    """
    tol = tol or DEFAULT_TOL
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    if B.shape[0] != B.shape[1]:
        raise ShapeError(f"B must be square, got {B.shape}")
    if C.shape != B.shape:
        raise ShapeError(f"B and C must have equal shapes, got {B.shape} and {C.shape}")
    Bh = B.conj().T
    H = _herm(Bh @ B - B @ Bh + C.conj().T @ C)
    scale = float(np.linalg.norm(H, 2))
    psd = True if scale == 0.0 else float(np.linalg.eigvalsh(H)[0]) >= -tol.psd_tol * scale
    return H, psd
