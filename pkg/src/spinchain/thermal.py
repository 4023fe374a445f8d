"""Gibbs states over sector eigenstates and two-site reduced density matrices.

The full 2^N density matrix is never materialized. The chain is
diagonalized once per (N, J); the field only shifts sector energies, so
one spectrum serves every (B, kT) point of a scan. Pair reduced density
matrices are accumulated eigenstate by eigenstate: each eigenstate's own
4x4 pair block is precomputed (and cached per pair), and the thermal RDM
is just the Boltzmann-weighted sum of those blocks.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .basis import ModelParams, SectorBasis, enumerate_sector, zeeman_eigenvalue
from .errors import ParameterError, StateValidityError
from .hamiltonian import build_sector_hamiltonian
from .numerics import EigenDecomposition, eigh_symmetric, stable_boltzmann_weights

# Eigenstates with Boltzmann weight below this are skipped in RDM sums.
# Kept at the underflow floor: concurrence depends on sqrt(w_a * w_b), so a
# dropped weight w perturbs it by up to sqrt(w), and skipping only weights
# that underflow to (near) zero is what keeps the pipeline at 1e-10 accuracy.
# At low kT almost every weight underflows outright, so the speed benefit of
# skipping remains.
WEIGHT_CUTOFF = 1e-300
# Relative width of the T=0 ground manifold.
DEGENERACY_TOL = 1e-9
# Entries scattered per chunk when building per-eigenstate pair blocks.
_CHUNK_ENTRIES = 16_000_000


@dataclass(frozen=True)
class ChainSpectrum:
    """Exchange Hamiltonian of a ring in diagonalized, sector-blocked form."""

    n_spins: int
    coupling: float
    bases: tuple
    sectors: tuple  # EigenDecomposition per n_up
    zeeman_slopes: tuple  # 2*n_up - N per sector
    _pair_blocks: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def exchange_energies(self) -> np.ndarray:
        """Concatenated exchange eigenvalues, sector order n_up = 0..N."""
        return np.concatenate([sec.values for sec in self.sectors])

    def pair_blocks(self, i: int, j: int):
        """Per-eigenstate 4x4 pair RDM blocks for sites (i, j), cached.

        Returns one (dim_sector, 4, 4) array per sector; entry [k] is the
        reduced state of sites (i, j) in that sector's k-th eigenstate.
        """
        key = (i, j)
        with self._lock:
            blocks = self._pair_blocks.get(key)
        if blocks is not None:
            return blocks
        blocks = tuple(
            _eigenstate_pair_blocks(basis, sec.vectors, i, j)
            for basis, sec in zip(self.bases, self.sectors)
        )
        with self._lock:
            self._pair_blocks.setdefault(key, blocks)
        return blocks


@dataclass(frozen=True)
class GibbsEnsemble:
    """Thermal weights of every eigenstate at one (B, kT) point."""

    spectrum: ChainSpectrum
    field: float
    kt: float
    weights: tuple  # one simplex slice per sector
    log_z_shifted: float  # log Z + E_ground/kT (0.0 at kT = 0)
    energy_origin: float  # ground energy used as the shift

    def energies(self) -> np.ndarray:
        """Concatenated total energies (exchange + Zeeman), sector order."""
        sp = self.spectrum
        return np.concatenate(
            [sec.values + self.field * slope for sec, slope in zip(sp.sectors, sp.zeeman_slopes)]
        )

    def mean_energy(self) -> float:
        return float(np.dot(self.energies(), np.concatenate(self.weights)))


@dataclass(frozen=True)
class PairDensityMatrix:
    """4x4 reduced state of a spin pair over {|00>,|01>,|10>,|11>}.

    The first tensor slot is site i; |0> is spin down.
    """

    sites: tuple
    matrix: np.ndarray
    separation: int

    def validate(self) -> "PairDensityMatrix":
        m = self.matrix
        if m.shape != (4, 4):
            raise StateValidityError(f"pair state must be 4x4, got {m.shape}")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise StateValidityError("pair state is not Hermitian within 1e-12")
        tr = float(np.real(np.trace(m)))
        if abs(tr - 1.0) > 1e-10:
            raise StateValidityError(f"pair state trace {tr} deviates from 1 beyond 1e-10")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise StateValidityError("pair state has eigenvalue below -1e-10")
        return self


def diagonalize_chain(n_spins: int, coupling: float) -> ChainSpectrum:
    """Diagonalize every magnetization sector of the exchange Hamiltonian."""
    params = ModelParams(n_spins=n_spins, coupling=coupling)
    bases, sectors, slopes = [], [], []
    for n_up in range(n_spins + 1):
        sh = build_sector_hamiltonian(params, n_up)
        bases.append(sh.basis)
        sectors.append(eigh_symmetric(sh.matrix))
        slopes.append(zeeman_eigenvalue(n_spins, n_up))
    return ChainSpectrum(
        n_spins=n_spins,
        coupling=coupling,
        bases=tuple(bases),
        sectors=tuple(sectors),
        zeeman_slopes=tuple(slopes),
    )


def gibbs_weights(spectrum: ChainSpectrum, b_field: float, kt: float) -> GibbsEnsemble:
    """Thermal weights over all eigenstates at field B and temperature kT.

    kT = 0 mixes all eigenstates within DEGENERACY_TOL of the ground
    energy uniformly (this covers exact level crossings such as B = B_c).
    """
    if not np.isfinite(b_field):
        raise ParameterError(f"field must be finite, got {b_field}")
    if kt < 0:
        raise ParameterError(f"kT must be >= 0, got {kt}")
    energies = np.concatenate(
        [sec.values + b_field * slope for sec, slope in zip(spectrum.sectors, spectrum.zeeman_slopes)]
    )
    e0 = float(energies.min())
    if kt == 0.0:
        ground = np.abs(energies - e0) <= DEGENERACY_TOL * max(1.0, abs(e0))
        flat = ground.astype(np.float64) / ground.sum()
        log_z = 0.0
    else:
        flat, log_z = stable_boltzmann_weights(energies, kt)
    sizes = [sec.dim for sec in spectrum.sectors]
    splits = np.split(flat, np.cumsum(sizes)[:-1])
    return GibbsEnsemble(
        spectrum=spectrum,
        field=b_field,
        kt=kt,
        weights=tuple(splits),
        log_z_shifted=log_z,
        energy_origin=e0,
    )


def pair_rdm(ensemble: GibbsEnsemble, i: int, j: int) -> PairDensityMatrix:
    """Reduced density matrix of sites (i, j) in the thermal state.

    Accumulates the Boltzmann-weighted per-eigenstate pair blocks,
    skipping eigenstates with weight below WEIGHT_CUTOFF.
    """
    n = ensemble.spectrum.n_spins
    _check_pair(n, i, j)
    rho = np.zeros((4, 4))
    for w, blocks in zip(ensemble.weights, ensemble.spectrum.pair_blocks(i, j)):
        keep = w >= WEIGHT_CUTOFF
        if keep.any():
            rho += np.einsum("k,kab->ab", w[keep], blocks[keep])
    return PairDensityMatrix(sites=(i, j), matrix=rho, separation=_separation(n, i, j)).validate()


def pure_state_pair_rdm(state, i: int, j: int, basis: SectorBasis | None = None) -> PairDensityMatrix:
    """Pair RDM of a pure state given over the full basis or a sector basis.

    Without an explicit `basis` the amplitude vector must have length 2^N
    and is indexed by the standard bit convention.
    """
    psi = np.asarray(state, dtype=np.complex128)
    if basis is None:
        n = int(round(np.log2(psi.size)))
        if psi.ndim != 1 or (1 << n) != psi.size:
            raise ParameterError(f"full-basis state length {psi.size} is not a power of 2")
        patterns = np.arange(psi.size, dtype=np.int64)
    else:
        n = basis.n_spins
        if psi.shape != basis.states.shape:
            raise ParameterError("state length does not match the sector basis")
        patterns = basis.states
    _check_pair(n, i, j)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise StateValidityError(f"state norm {norm} deviates from 1 beyond 1e-10")
    ab, rest_idx, n_rest = _pair_indexing(patterns, i, j)
    m = np.zeros((n_rest, 4), dtype=np.complex128)
    m[rest_idx, ab] = psi
    rho = np.einsum("ra,rb->ab", m, m.conj())
    if np.abs(rho.imag).max() < 1e-15:
        rho = rho.real
    return PairDensityMatrix(sites=(i, j), matrix=rho, separation=_separation(n, i, j)).validate()


def _pair_indexing(patterns: np.ndarray, i: int, j: int):
    """Split basis patterns into a pair label 2a+b and a spectator index."""
    a = (patterns >> i) & 1
    b = (patterns >> j) & 1
    ab = (2 * a + b).astype(np.intp)
    rest = patterns & ~np.int64((1 << i) | (1 << j))
    uniq, rest_idx = np.unique(rest, return_inverse=True)
    return ab, rest_idx.astype(np.intp), len(uniq)


def _eigenstate_pair_blocks(basis: SectorBasis, vectors: np.ndarray, i: int, j: int) -> np.ndarray:
    """4x4 pair RDM of every eigenvector column, as a (dim, 4, 4) array."""
    ab, rest_idx, n_rest = _pair_indexing(basis.states, i, j)
    dim = basis.dim
    out = np.zeros((dim, 4, 4))
    chunk = max(1, _CHUNK_ENTRIES // (4 * n_rest))
    for start in range(0, dim, chunk):
        cols = vectors[:, start : start + chunk]
        t = np.zeros((n_rest, 4, cols.shape[1]))
        t[rest_idx, ab, :] = cols
        out[start : start + chunk] = np.einsum("rak,rbk->kab", t, t)
    return out


def _separation(n_spins: int, i: int, j: int) -> int:
    d = abs(i - j)
    return min(d, n_spins - d)


def _check_pair(n_spins: int, i: int, j: int):
    if not (0 <= i < n_spins and 0 <= j < n_spins):
        raise ParameterError(f"sites ({i}, {j}) out of range for N={n_spins}")
    if i == j:
        raise ParameterError("pair sites must be distinct")
