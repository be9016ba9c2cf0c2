"""Basis-labeled dense complex linear algebra.

Every state and operator in this package is a dense complex array tagged with
a basis label so that cross-basis mistakes fail loudly instead of silently.
Known labels are ``logic9`` (the 9 exchange-antisymmetric logic states),
``full27`` (three qutrits, atom 1 = most significant trit), ``eff4`` (the
adiabatic 4-state subspace) and generic ``d<n>`` labels for everything else.

Dimensions never exceed a few dozen here, so everything is dense and
immutable; arrays are frozen after construction and safe to share between
workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

# Tolerance tiers: exact algebraic identities, integrated quantities, and
# density-matrix positivity, in that order.
ALGEBRAIC_TOL = 1e-12
INTEGRATION_TOL = 1e-9
POSITIVITY_TOL = 1e-6

NAMED_BASES = {"logic9": 9, "full27": 27, "eff4": 4}
_GENERIC_RE = re.compile(r"^d(\d+)$")


class BasisError(ValueError):
    """Raised on basis-label mismatches or malformed labels."""


def generic_basis(dim: int) -> str:
    if dim < 1:
        raise BasisError(f"basis dimension must be >= 1, got {dim}")
    return f"d{dim}"


def basis_dim(basis: str) -> int:
    """Dimension of a basis label; rejects unknown labels."""
    if basis in NAMED_BASES:
        return NAMED_BASES[basis]
    m = _GENERIC_RE.match(basis)
    if m is None:
        raise BasisError(f"unknown basis label {basis!r}")
    return int(m.group(1))


def is_generic(basis: str) -> bool:
    return _GENERIC_RE.match(basis) is not None


def _frozen_complex(values, shape_kind: str, basis: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128).copy()
    dim = basis_dim(basis)
    if shape_kind == "vector":
        if arr.shape != (dim,):
            raise ValueError(f"expected shape ({dim},) for basis {basis!r}, got {arr.shape}")
    else:
        if arr.shape != (dim, dim):
            raise ValueError(f"expected shape ({dim},{dim}) for basis {basis!r}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValueError("non-finite amplitude encountered")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Pure state: complex amplitudes over a declared basis."""

    basis: str
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen_complex(self.amplitudes, "vector", self.basis))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = INTEGRATION_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def to_density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(self.basis, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed state over a declared basis."""

    basis: str
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen_complex(self.entries, "matrix", self.basis))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def validate(self, herm_tol: float = INTEGRATION_TOL, trace_tol: float = INTEGRATION_TOL,
                 eig_tol: float = POSITIVITY_TOL) -> None:
        """Check Hermiticity, unit trace, and near-positivity; raise on failure."""
        herm = np.max(np.abs(self.entries - self.entries.conj().T))
        if herm > herm_tol:
            raise ValueError(f"density matrix not Hermitian: max deviation {herm:.3e}")
        tr = np.trace(self.entries)
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"density matrix trace {tr:.12f} != 1")
        lo = float(np.linalg.eigvalsh(self.entries)[0])
        if lo < -eig_tol:
            raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense square operator (Hamiltonian, jump operator, unitary, ...)."""

    basis: str
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen_complex(self.entries, "matrix", self.basis))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_hermitian(self, tol: float = ALGEBRAIC_TOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)

    def apply(self, state: StateVector) -> StateVector:
        _require_same_basis(self, state)
        return StateVector(state.basis, self.entries @ state.amplitudes)


def identity(dim: int, basis: str | None = None) -> OperatorMatrix:
    return OperatorMatrix(basis or generic_basis(dim), np.eye(dim, dtype=np.complex128))


def basis_state(index: int, dim: int, basis: str | None = None) -> StateVector:
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(basis or generic_basis(dim), amps)


def _require_same_basis(a, b) -> None:
    if a.basis != b.basis:
        raise BasisError(f"basis mismatch: {a.basis!r} vs {b.basis!r}")


def as_basis(obj, basis: str):
    """Relabel a state or operator; the dimensions must agree."""
    if basis_dim(basis) != obj.dim:
        raise BasisError(f"cannot relabel dim-{obj.dim} object as {basis!r} (dim {basis_dim(basis)})")
    if isinstance(obj, StateVector):
        return StateVector(basis, obj.amplitudes)
    if isinstance(obj, DensityMatrix):
        return DensityMatrix(basis, obj.entries)
    if isinstance(obj, OperatorMatrix):
        return OperatorMatrix(basis, obj.entries)
    raise TypeError(f"cannot relabel {type(obj).__name__}")


def tensor_product(a, b):
    """Kronecker product of two operators or two vectors.

    The first factor is the slow (most significant) index, so
    ``tensor_product(x, y)`` of basis vectors places the 1 at
    ``index(x) * dim(y) + index(y)``.  Only generic ``d<n>`` bases are
    accepted; relabel the result with :func:`as_basis` when it lands in a
    named space.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        _require_generic_pair(a, b)
        return StateVector(generic_basis(a.dim * b.dim), np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, OperatorMatrix) and isinstance(b, OperatorMatrix):
        _require_generic_pair(a, b)
        return OperatorMatrix(generic_basis(a.dim * b.dim), np.kron(a.entries, b.entries))
    raise TypeError(
        f"tensor_product needs two operators or two vectors, got {type(a).__name__} and {type(b).__name__}"
    )


def _require_generic_pair(a, b) -> None:
    for x in (a, b):
        if not is_generic(x.basis):
            raise BasisError(f"tensor_product operands must use generic d<n> bases, got {x.basis!r}")


def dagger(a: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(a.basis, a.entries.conj().T)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    _require_same_basis(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expectation_value(op: OperatorMatrix, state) -> float:
    """<psi|A|psi> or Tr(A rho) for a Hermitian operator A.

    The imaginary residue is checked against INTEGRATION_TOL before being
    discarded.
    """
    _require_same_basis(op, state)
    if not op.is_hermitian(tol=INTEGRATION_TOL):
        raise ValueError("expectation_value requires a Hermitian operator")
    if isinstance(state, StateVector):
        value = complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))
    elif isinstance(state, DensityMatrix):
        value = complex(np.trace(op.entries @ state.entries))
    else:
        raise TypeError(f"expected StateVector or DensityMatrix, got {type(state).__name__}")
    if abs(value.imag) > INTEGRATION_TOL:
        raise ValueError(f"expectation value has imaginary residue {value.imag:.3e}")
    return value.real
