"""Exchange Hamiltonian of the Heisenberg ring, built per magnetization sector.

H = sum_i (B sigma_z^i + J sigma^i . sigma^{i+1}) with cyclic boundary
conditions. Only the exchange part is materialized: the Zeeman term is
constant within a sector (B times 2*n_up - N) and is added as a scalar
shift wherever energies are needed. Note that for N=2 the cyclic sum
visits the single (0,1) bond twice, which doubles the exchange energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import ModelParams, SectorBasis, enumerate_sector, zeeman_eigenvalue
from .errors import ParameterError


@dataclass(frozen=True)
class SectorHamiltonian:
    """Exchange part of the ring Hamiltonian restricted to one sector."""

    basis: SectorBasis
    matrix: np.ndarray
    # True for N=2, where the cyclic sum counts the single bond twice.
    doubled_bond: bool


def build_sector_hamiltonian(params: ModelParams, n_up: int) -> SectorHamiltonian:
    """Build the dense exchange matrix J sum_i sigma^i . sigma^{i+1} on a sector.

    For every bond (i, i+1 mod N), aligned z-spins add +J and anti-aligned
    add -J on the diagonal, while sigma_x sigma_x + sigma_y sigma_y
    connects the two exchanged configurations with amplitude 2J.
    """
    n = params.n_spins
    j = params.coupling
    basis = enumerate_sector(n, n_up)
    dim = basis.dim
    h = np.zeros((dim, dim))
    bonds = [(site, (site + 1) % n) for site in range(n)]
    for row, state in enumerate(basis.states):
        s = int(state)
        for a, b in bonds:
            bit_a = (s >> a) & 1
            bit_b = (s >> b) & 1
            if bit_a == bit_b:
                h[row, row] += j
            else:
                h[row, row] -= j
                flipped = s ^ ((1 << a) | (1 << b))
                h[row, basis.index_of[flipped]] += 2.0 * j
    return SectorHamiltonian(basis=basis, matrix=h, doubled_bond=(n == 2))


def sector_exchange_eigenvalues(params: ModelParams, n_up: int) -> np.ndarray:
    """Eigenvalues only (ascending) of one sector's exchange matrix."""
    return np.linalg.eigvalsh(build_sector_hamiltonian(params, n_up).matrix)


def full_eigenvalues(params: ModelParams):
    """All 2^N eigenvalues of H with their sector labels, ascending in energy.

    Assembled sector by sector as exchange eigenvalue + B*(2*n_up - N).
    """
    out = []
    for n_up in range(params.n_spins + 1):
        shift = params.field * zeeman_eigenvalue(params.n_spins, n_up)
        for e in sector_exchange_eigenvalues(params, n_up):
            out.append((float(e + shift), n_up))
    out.sort()
    return out


def critical_field_closed_form(n_spins: int, coupling: float) -> float:
    """Field beyond which |00...0> is the T=0 ground state (antiferromagnet).

    4J for even N, 2J(1 + cos(pi/N)) for odd N; never exceeds 4J.
    """
    if n_spins < 2:
        raise ParameterError(f"n_spins must be >= 2, got {n_spins}")
    if coupling <= 0:
        raise ParameterError("critical field formula requires antiferromagnetic J > 0")
    if n_spins % 2 == 0:
        return 4.0 * coupling
    return 2.0 * coupling * (1.0 + math.cos(math.pi / n_spins))


def critical_temperature_two_qubit(coupling: float) -> float:
    """Temperature 8J/ln(3) above which the two-qubit ring is disentangled."""
    if coupling <= 0:
        raise ParameterError("critical temperature requires antiferromagnetic J > 0")
    return 8.0 * coupling / math.log(3.0)
