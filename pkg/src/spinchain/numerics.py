"""Numerical kernels: symmetric eigendecomposition, entropies, Boltzmann weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, ParameterError, StateValidityError

LOG2 = np.log(2.0)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.values)


def eigh_symmetric(matrix: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix, values ascending."""
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, np.abs(a).max())
    if np.abs(a - a.T).max() > 1e-12 * scale:
        raise ParameterError("matrix is not symmetric within 1e-12 relative tolerance")
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed on {a.shape[0]}x{a.shape[0]} matrix: {exc}") from exc
    return EigenDecomposition(values=values, vectors=vectors)


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy h(x) = -x log2 x - (1-x) log2 (1-x), in bits.

    0 log 0 is taken as 0; inputs within 1e-12 outside [0, 1] are clamped.
    """
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise DomainError(f"binary_entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    out = 0.0
    if x > 0.0:
        out -= x * np.log2(x)
    if x < 1.0:
        out -= (1.0 - x) * np.log2(1.0 - x)
    return float(out)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy S(rho) = -sum_k lambda_k log2 lambda_k, in bits.

    Eigenvalues in [-1e-10, 0) are treated as roundoff and clamped to 0;
    anything more negative, a non-unit trace, or a non-Hermitian input is
    rejected as an invalid state.
    """
    r = np.asarray(rho, dtype=np.complex128)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise StateValidityError(f"expected a square density matrix, got shape {r.shape}")
    if np.abs(r - r.conj().T).max() > 1e-10:
        raise StateValidityError("density matrix is not Hermitian within 1e-10")
    tr = np.real(np.trace(r))
    if abs(tr - 1.0) > 1e-9:
        raise StateValidityError(f"density matrix trace {tr} deviates from 1 beyond 1e-9")
    lam = np.linalg.eigvalsh(r)
    if lam.min() < -1e-10:
        raise StateValidityError(f"density matrix has eigenvalue {lam.min()} below -1e-10")
    lam = np.clip(lam, 0.0, None)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def stable_boltzmann_weights(energies: np.ndarray, kt: float):
    """Normalized Boltzmann weights exp(-E/kT)/Z without overflow.

    Energies are shifted by their minimum before exponentiation, which
    makes the result invariant under a constant energy offset.

    Returns (weights, logZ_shifted) where logZ_shifted is the log of the
    partition sum of the shifted energies, i.e. log Z + E_min/kT.
    """
    e = np.asarray(energies, dtype=np.float64)
    if e.size == 0 or not np.all(np.isfinite(e)):
        raise ParameterError("energies must be a nonempty finite sequence")
    if not (kt > 0.0):
        raise DomainError(f"stable_boltzmann_weights requires kT > 0, got {kt}")
    shifted = (e - e.min()) / kt
    w = np.exp(-shifted)
    z = w.sum()
    return w / z, float(np.log(z))
