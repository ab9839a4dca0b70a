"""Superoperator representations: rank-4 tensors over matrix units, the
coordinate matrix over a nice operator basis, and the F-A-F coefficient
form E(A) = sum_ij c_ij F_i A F_j.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import NiceBasis


@dataclass(frozen=True)
class SuperopTensor:
    """Rank-4 tensor T with action (E(A))_kn = sum_lm T[k,l,m,n] A[l,m].

    Equivalently T[k,l,m,n] = E(|l><m|)[k,n].
    """

    entries: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.entries, dtype=complex)
        if t.ndim != 4 or len(set(t.shape)) != 1:
            raise ValueError(f"tensor must have shape (d,d,d,d), got {t.shape}")
        object.__setattr__(self, "entries", t)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SuperopMatrix:
    """Coordinate matrix E_ij = <F_i, E(F_j)> over the full nice basis.

    Real entries exactly when the superoperator is Hermiticity-preserving.
    """

    entries: np.ndarray
    basis: NiceBasis

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        n = self.basis.J + 1
        if e.shape != (n, n):
            raise ValueError(f"matrix must be {n}x{n} for this basis, got {e.shape}")
        object.__setattr__(self, "entries", e)


@dataclass(frozen=True)
class FAFRep:
    """Coefficients c_ij of E(A) = sum_ij c_ij F_i A F_j over the full basis.

    c is real-symmetric exactly when the superoperator is both
    Hermiticity-preserving and Hermitian.
    """

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError(f"coefficient matrix must be square, got {c.shape}")
        object.__setattr__(self, "c", c)


def tensor_from_map(fn: Callable[[np.ndarray], np.ndarray], d: int) -> SuperopTensor:
    """Build the rank-4 tensor of a superoperator given as a callable on d x d matrices."""
    t = np.zeros((d, d, d, d), dtype=complex)
    for l in range(d):
        for m in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[l, m] = 1.0
            t[:, l, m, :] = fn(unit)
    return SuperopTensor(entries=t)


def apply_tensor(t: SuperopTensor, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (t.dim, t.dim):
        raise ValueError(f"operator shape {x.shape} incompatible with tensor dim {t.dim}")
    return np.einsum("klmn,lm->kn", t.entries, x)


def adjoint_tensor(t: SuperopTensor) -> SuperopTensor:
    """Tensor of the adjoint map, <E'(A), B> = <A, E(B)> in Hilbert-Schmidt sense."""
    return SuperopTensor(entries=t.entries.conj().transpose(1, 0, 3, 2))


def superop_matrix(t: SuperopTensor, b: NiceBasis) -> SuperopMatrix:
    """E_ij = Tr[F_i E(F_j)]."""
    if t.dim != b.dim:
        raise ValueError(f"tensor dim {t.dim} does not match basis dim {b.dim}")
    f = b.elements
    e = np.einsum("ink,klmn,jlm->ij", f, t.entries, f, optimize=True)
    return SuperopMatrix(entries=e, basis=b)


def tensor_from_matrix(m: SuperopMatrix) -> SuperopTensor:
    """Invert superop_matrix: T[k,l,m,n] = sum_ij E_ij (F_i)_kn (F_j)_ml."""
    f = m.basis.elements
    t = np.einsum("ij,ikn,jml->klmn", m.entries, f, f, optimize=True)
    return SuperopTensor(entries=t)


def faf_from_tensor(t: SuperopTensor, b: NiceBasis) -> FAFRep:
    """Closed-form coefficients c_ij = sum F_i[l,k] F_j[n,m] T[k,l,m,n]."""
    if t.dim != b.dim:
        raise ValueError(f"tensor dim {t.dim} does not match basis dim {b.dim}")
    f = b.elements
    c = np.einsum("ilk,jnm,klmn->ij", f, f, t.entries, optimize=True)
    return FAFRep(c=c)


def tensor_from_faf(r: FAFRep, b: NiceBasis) -> SuperopTensor:
    """T[k,l,m,n] = sum_ij c_ij (F_i)_kl (F_j)_mn."""
    f = b.elements
    if r.c.shape[0] != f.shape[0]:
        raise ValueError("coefficient matrix size does not match basis")
    t = np.einsum("ij,ikl,jmn->klmn", r.c, f, f, optimize=True)
    return SuperopTensor(entries=t)


def apply_faf(r: FAFRep, x: np.ndarray, b: NiceBasis) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return np.einsum("ij,iab,bc,jcd->ad", r.c, b.elements, x, b.elements, optimize=True)


def adjoint_faf(r: FAFRep) -> FAFRep:
    """Coefficients of the adjoint: entrywise conjugate."""
    return FAFRep(c=r.c.conj())


def is_hermiticity_preserving(m: SuperopMatrix, tol: float) -> bool:
    """A superoperator preserves Hermiticity iff its coordinate matrix is real."""
    return float(np.max(np.abs(m.entries.imag), initial=0.0)) <= tol


def is_unital(t: SuperopTensor, tol: float) -> bool:
    """True when E(I) vanishes (Frobenius norm at most tol)."""
    image_of_identity = np.einsum("klln->kn", t.entries)
    return float(np.linalg.norm(image_of_identity)) <= tol
