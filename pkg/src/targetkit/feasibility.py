"""Feasibility predicates with certificates.

:func:`check` answers "does a targeting matrix A with the requested
structure and A @ X = Y exist?" and reports, for every defining
condition, the scalar deviation that was actually compared against its
threshold.  A verdict is Feasible exactly when every condition holds, so
an infeasible report doubles as a certificate naming what failed.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, ZeroTargetError, ZeroVectorError
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    is_zero_matrix,
    null_space_basis,
    numerical_rank,
)

__all__ = [
    "PropertyClass",
    "PROPERTY_KINDS",
    "UNCONSTRAINED",
    "INVERTIBLE",
    "HERMITIAN",
    "INVERTIBLE_HERMITIAN",
    "POSITIVE_SEMIDEFINITE",
    "POSITIVE_DEFINITE",
    "UNITARY",
    "REFLECTION",
    "ORTHOGONAL_PROJECTION",
    "COMPLEX_SYMMETRIC",
    "NORMAL_VECTOR",
    "normal_two_point",
    "Condition",
    "FeasibilityReport",
    "check",
]

PROPERTY_KINDS = frozenset(
    {
        "unconstrained",
        "invertible",
        "hermitian",
        "invertible-hermitian",
        "positive-semidefinite",
        "positive-definite",
        "unitary",
        "reflection",
        "orthogonal-projection",
        "complex-symmetric",
        "normal-two-point",
        "normal-vector",
    }
)


@dataclass(frozen=True)
class PropertyClass:
    """A structural class of targeting matrices.

    ``normal-two-point`` carries the two admissible eigenvalues; every
    other kind is parameter-free.
    """

    kind: str
    lam: complex | None = None
    mu: complex | None = None

    def __post_init__(self):
        if self.kind not in PROPERTY_KINDS:
            raise ValueError(f"unknown property kind {self.kind!r}")
        if self.kind == "normal-two-point":
            if self.lam is None or self.mu is None:
                raise ValueError("normal-two-point needs both eigenvalues")
            object.__setattr__(self, "lam", complex(self.lam))
            object.__setattr__(self, "mu", complex(self.mu))
            if self.lam == self.mu:
                raise ValueError("the two admissible eigenvalues must be distinct")
        elif self.lam is not None or self.mu is not None:
            raise ValueError(f"{self.kind!r} takes no eigenvalue parameters")

    def label(self) -> str:
        if self.kind == "normal-two-point":
            return f"normal-two-point(lam={self.lam}, mu={self.mu})"
        return self.kind


UNCONSTRAINED = PropertyClass("unconstrained")
INVERTIBLE = PropertyClass("invertible")
HERMITIAN = PropertyClass("hermitian")
INVERTIBLE_HERMITIAN = PropertyClass("invertible-hermitian")
POSITIVE_SEMIDEFINITE = PropertyClass("positive-semidefinite")
POSITIVE_DEFINITE = PropertyClass("positive-definite")
UNITARY = PropertyClass("unitary")
REFLECTION = PropertyClass("reflection")
ORTHOGONAL_PROJECTION = PropertyClass("orthogonal-projection")
COMPLEX_SYMMETRIC = PropertyClass("complex-symmetric")
NORMAL_VECTOR = PropertyClass("normal-vector")


def normal_two_point(lam, mu) -> PropertyClass:
    """Normal targeting matrices whose spectrum lies in ``{lam, mu}``."""
    return PropertyClass("normal-two-point", lam=complex(lam), mu=complex(mu))


@dataclass(frozen=True)
class Condition:
    """One named feasibility condition: satisfied iff deviation <= threshold."""

    name: str
    satisfied: bool
    deviation: float
    threshold: float

    def __post_init__(self):
        # numpy scalars sneak in from norm/eig calls; pin the plain types
        # here so reports serialize identically everywhere
        object.__setattr__(self, "satisfied", bool(self.satisfied))
        object.__setattr__(self, "deviation", float(self.deviation))
        object.__setattr__(self, "threshold", float(self.threshold))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "satisfied": self.satisfied,
            "deviation": self.deviation,
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class FeasibilityReport:
    property: PropertyClass
    feasible: bool
    conditions: tuple[Condition, ...]

    def verdict(self) -> str:
        return "feasible" if self.feasible else "infeasible"

    def to_dict(self) -> dict:
        return {
            "property": self.property.label(),
            "verdict": self.verdict(),
            "conditions": [c.to_dict() for c in self.conditions],
        }


def _report(prop: PropertyClass, conditions) -> FeasibilityReport:
    conditions = tuple(conditions)
    return FeasibilityReport(
        property=prop,
        feasible=all(c.satisfied for c in conditions),
        conditions=conditions,
    )


def _fro(a) -> float:
    return float(np.linalg.norm(a))


def _herm_part(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def _null_inclusion(A_of, B_on, tol: TolerancePolicy, name: str) -> Condition:
    # null(A_of) contained in null(B_on), measured as the relative mass of
    # B_on on an orthonormal basis of A_of's null space
    norm_b = _fro(B_on)
    basis = null_space_basis(A_of, tol)
    if norm_b == 0.0 or basis.shape[1] == 0:
        dev = 0.0
    else:
        dev = _fro(B_on @ basis) / norm_b
    return Condition(name, dev <= tol.residual_tol, dev, tol.residual_tol)


def _rank_equality(X, Y, tol: TolerancePolicy) -> Condition:
    dev = float(abs(numerical_rank(X, tol) - numerical_rank(Y, tol)))
    return Condition("rank-equality", dev <= 0.0, dev, 0.0)


def _adjoint_symmetry(M, tol: TolerancePolicy, name: str, transpose: bool = False) -> Condition:
    Mt = M.T if transpose else M.conj().T
    dev = _fro(M - Mt) / max(1.0, _fro(M))
    return Condition(name, dev <= tol.sym_tol, dev, tol.sym_tol)


def _semidefinite(M, tol: TolerancePolicy, name: str, definite: bool = False) -> Condition:
    # deviation is -lambda_min relative to the spectral norm, so "PSD"
    # means dev <= psd_tol and "PD" means dev <= -psd_tol
    Mh = _herm_part(M)
    scale = float(np.linalg.norm(Mh, 2)) if Mh.size else 0.0
    if scale > 0.0:
        dev = -float(np.linalg.eigvalsh(Mh)[0]) / scale
    else:
        dev = 0.0
    threshold = -tol.psd_tol if definite else tol.psd_tol
    return Condition(name, dev <= threshold, dev, threshold)


def _matrix_equation(lhs, rhs, tol: TolerancePolicy, name: str) -> Condition:
    dev = _fro(lhs - rhs) / max(1.0, _fro(lhs))
    return Condition(name, dev <= tol.residual_tol, dev, tol.residual_tol)


def _near_multiple(Y, scalar, X, tol: TolerancePolicy) -> bool:
    return _fro(Y - scalar * X) <= tol.residual_tol * max(1.0, _fro(Y))


def _conditions_unconstrained(X, Y, prop, tol):
    return (_null_inclusion(X, Y, tol, "null-space-inclusion"),)


def _conditions_invertible(X, Y, prop, tol):
    return (
        _rank_equality(X, Y, tol),
        _null_inclusion(X, Y, tol, "null-space-inclusion"),
    )


def _conditions_hermitian(X, Y, prop, tol):
    return (
        _null_inclusion(X, Y, tol, "null-space-inclusion"),
        _adjoint_symmetry(X.conj().T @ Y, tol, "hermitian-product"),
    )


def _conditions_invertible_hermitian(X, Y, prop, tol):
    return (
        _rank_equality(X, Y, tol),
        _null_inclusion(X, Y, tol, "null-space-inclusion"),
        _adjoint_symmetry(X.conj().T @ Y, tol, "hermitian-product"),
    )


def _conditions_psd(X, Y, prop, tol):
    M = X.conj().T @ Y
    return (
        _adjoint_symmetry(M, tol, "hermitian-product"),
        _semidefinite(M, tol, "psd-product"),
        # null Y ⊆ null(X*Y) always holds, so equality is the reverse inclusion
        _null_inclusion(M, Y, tol, "product-null-equality"),
    )


def _conditions_pd(X, Y, prop, tol):
    M = X.conj().T @ Y
    if numerical_rank(X, tol) == X.shape[1]:
        # full column rank: positive definiteness of X*Y is the whole story
        return (
            _adjoint_symmetry(M, tol, "hermitian-product"),
            _semidefinite(M, tol, "pd-product", definite=True),
        )
    return _conditions_psd(X, Y, prop, tol) + (_rank_equality(X, Y, tol),)


def _conditions_unitary(X, Y, prop, tol):
    return (_matrix_equation(X.conj().T @ X, Y.conj().T @ Y, tol, "gram-equality"),)


def _conditions_reflection(X, Y, prop, tol):
    return (
        _adjoint_symmetry(X.conj().T @ Y, tol, "hermitian-product"),
        _matrix_equation(X.conj().T @ X, Y.conj().T @ Y, tol, "gram-equality"),
    )


def _conditions_projection(X, Y, prop, tol):
    return (_matrix_equation(Y.conj().T @ Y, Y.conj().T @ X, tol, "target-gram-equality"),)


def _conditions_complex_symmetric(X, Y, prop, tol):
    return (
        _null_inclusion(X, Y, tol, "null-space-inclusion"),
        _adjoint_symmetry(X.T @ Y, tol, "symmetric-product", transpose=True),
    )


def _conditions_normal_two_point(X, Y, prop, tol):
    lam, mu = prop.lam, prop.mu
    E = Y - mu * X
    F = Y - lam * X
    scale = max(1.0, _fro(E) * _fro(F))
    dev = _fro(F.conj().T @ E) / scale
    orth = Condition("two-point-orthogonality", dev <= tol.residual_tol, dev, tol.residual_tol)

    m, n = X.shape
    violated = False
    if m == n and (_near_multiple(Y, lam, X, tol) or _near_multiple(Y, mu, X, tol)):
        violated = numerical_rank(X, tol) == m
    proviso = Condition("rank-proviso", not violated, 1.0 if violated else 0.0, 0.0)
    return (orth, proviso)


_CONDITION_BUILDERS = {
    "unconstrained": _conditions_unconstrained,
    "invertible": _conditions_invertible,
    "hermitian": _conditions_hermitian,
    "invertible-hermitian": _conditions_invertible_hermitian,
    "positive-semidefinite": _conditions_psd,
    "positive-definite": _conditions_pd,
    "unitary": _conditions_unitary,
    "reflection": _conditions_reflection,
    "orthogonal-projection": _conditions_projection,
    "complex-symmetric": _conditions_complex_symmetric,
    "normal-two-point": _conditions_normal_two_point,
}


def check(prop: PropertyClass, X, Y, tol: TolerancePolicy | None = None) -> FeasibilityReport:
    """Decide feasibility of the targeting problem for one property class.

    The conditions evaluated per class (together they are necessary and
    sufficient for a targeting matrix of that class to exist):

    - unconstrained: null X ⊆ null Y
    - invertible: rank X = rank Y plus the null-space inclusion
    - hermitian: inclusion plus X*Y Hermitian
    - invertible-hermitian: null-space equality plus X*Y Hermitian
    - positive-semidefinite: X*Y PSD and null Y = null(X*Y)
    - positive-definite: the PSD conditions plus rank Y = rank X, or for
      full-column-rank X simply X*Y positive definite
    - unitary: X*X = Y*Y
    - reflection: X*Y Hermitian and X*X = Y*Y
    - orthogonal-projection: Y*X = Y*Y (with Y nonzero)
    - complex-symmetric: inclusion plus (X^T)Y symmetric
    - normal-two-point: (Y - lam X)*(Y - mu X) = 0, plus a rank proviso
      barring square full-rank X with Y a multiple of X (the targeting
      matrix is then a forced scalar times the identity)
    - normal-vector: single-column data, both vectors nonzero

    A numerically zero X is feasible exactly when Y is zero too (the
    identity is a witness); orthogonal-projection instead rejects zero Y
    and normal-vector rejects zero vectors outright.
    """
    tol = tol or DEFAULT_TOL
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    if X.shape != Y.shape:
        raise ShapeError(f"X and Y must have equal shapes, got {X.shape} and {Y.shape}")

    kind = prop.kind
    if kind == "normal-vector":
        if X.shape[1] != 1:
            raise ShapeError("normal-vector targeting is defined for single-column data")
        if is_zero_matrix(X, tol):
            raise ZeroVectorError("the source vector is zero")
        if is_zero_matrix(Y, tol):
            raise ZeroVectorError("the target vector is zero")
        return _report(prop, (Condition("nonzero-vectors", True, 0.0, tol.zero_matrix_tol),))

    if kind == "orthogonal-projection" and is_zero_matrix(Y, tol):
        raise ZeroTargetError("orthogonal-projection targeting requires a nonzero target")

    if kind != "orthogonal-projection" and is_zero_matrix(X, tol):
        dev = _fro(Y)
        return _report(
            prop,
            (Condition("zero-source-zero-target", dev <= tol.zero_matrix_tol, dev, tol.zero_matrix_tol),),
        )

    return _report(prop, _CONDITION_BUILDERS[kind](X, Y, prop, tol))
