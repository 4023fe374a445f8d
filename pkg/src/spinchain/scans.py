"""Parameter sweeps, critical-point detection, and figure datasets.

Scan output is a flat table with columns B, kT, i, j, d, C, E, I, M in
B-major order; rows are byte-for-byte deterministic regardless of the
number of worker threads (each grid point is computed independently).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .basis import MAX_SPINS, ModelParams
from .errors import NumericError, ParameterError, StateValidityError
from .hamiltonian import critical_field_closed_form, sector_exchange_eigenvalues
from .measures import chsh_quantity, concurrence, eof_from_concurrence, mutual_information
from .thermal import ChainSpectrum, diagonalize_chain, gibbs_weights, pair_rdm

SCAN_COLUMNS = ("B", "kT", "i", "j", "d", "C", "E", "I", "M")

# Concurrence threshold that counts a pair as entangled for l_E.
ENTANGLEMENT_TOL = 1e-6

THREADS_ENV_VAR = "SPINCHAIN_THREADS"

FIGURE_IDS = (1, 2, 3, 4, 5)

_DEFAULT_B_GRID = np.linspace(0.0, 6.0, 121)  # step 0.05
_DEFAULT_KT_GRID = np.geomspace(0.01, 10.0, 120)


def thread_count() -> int:
    """Worker-thread cap: SPINCHAIN_THREADS if set, else the CPU count."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    if n < 1:
        raise ParameterError(f"{THREADS_ENV_VAR} must be a positive integer, got {n}")
    return n


@dataclass(frozen=True)
class ScanGrid:
    """Axes of a pair-measure sweep: field and temperature samples plus pairs."""

    n_spins: int
    coupling: float
    b_values: np.ndarray
    kt_values: np.ndarray
    pairs: tuple

    def __post_init__(self):
        ModelParams(n_spins=self.n_spins, coupling=self.coupling)
        for name, axis in (("b_values", self.b_values), ("kt_values", self.kt_values)):
            arr = np.asarray(axis, dtype=np.float64)
            if arr.size == 0 or not np.all(np.isfinite(arr)):
                raise ParameterError(f"{name} must be a nonempty finite sequence")
            if arr.size > 1 and not np.all(np.diff(arr) > 0):
                raise ParameterError(f"{name} must be strictly ascending")
            object.__setattr__(self, name, arr)
        if not self.pairs:
            raise ParameterError("at least one pair is required")
        for i, j in self.pairs:
            if i == j or not (0 <= i < self.n_spins and 0 <= j < self.n_spins):
                raise ParameterError(f"invalid pair ({i}, {j}) for N={self.n_spins}")

    @classmethod
    def from_separations(cls, n_spins, coupling, b_values, kt_values, separations):
        """Grid over the representative pair (0, d) for each separation d."""
        pairs = []
        for d in separations:
            if not (1 <= d <= n_spins // 2):
                raise ParameterError(f"separation {d} out of range for N={n_spins}")
            pairs.append((0, d))
        return cls(n_spins, coupling, np.asarray(b_values, float), np.asarray(kt_values, float), tuple(pairs))


def _point_rows(spectrum: ChainSpectrum, b: float, kt: float, pairs) -> list:
    try:
        ensemble = gibbs_weights(spectrum, b, kt)
        rows = []
        for i, j in pairs:
            rho = pair_rdm(ensemble, i, j)
            c = concurrence(rho).concurrence
            rows.append(
                (
                    float(b),
                    float(kt),
                    i,
                    j,
                    rho.separation,
                    c,
                    eof_from_concurrence(c),
                    mutual_information(rho),
                    chsh_quantity(rho),
                )
            )
        return rows
    except (NumericError, StateValidityError, np.linalg.LinAlgError) as exc:
        raise NumericError(f"failure at grid point B={b}, kT={kt}: {exc}") from exc


def scan_pair_measures(grid: ScanGrid, spectrum: ChainSpectrum | None = None) -> list:
    """Evaluate C, E, I, M on every (B, kT, pair) point of the grid.

    Rows come back B-major, then kT, then pair, independently of the
    degree of parallelism.
    """
    if spectrum is None:
        spectrum = diagonalize_chain(grid.n_spins, grid.coupling)
    # Warm the per-pair block cache serially; workers then only read it.
    for i, j in grid.pairs:
        spectrum.pair_blocks(i, j)
    points = [(b, kt) for b in grid.b_values for kt in grid.kt_values]
    workers = min(thread_count(), len(points))
    if workers <= 1:
        chunks = [_point_rows(spectrum, b, kt, grid.pairs) for b, kt in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda p: _point_rows(spectrum, p[0], p[1], grid.pairs), points))
    return [row for chunk in chunks for row in chunk]


@dataclass(frozen=True)
class Crossing:
    """One ground-state level crossing of the magnetization staircase."""

    b_value: float
    from_n_up: int
    to_n_up: int


@dataclass(frozen=True)
class StaircaseResult:
    """Ground-sector structure of the antiferromagnetic ring versus field."""

    n_spins: int
    coupling: float
    sector_ground_energies: np.ndarray  # exchange part, indexed by n_up
    crossings: tuple
    b_e: float  # field where the one-magnon sector becomes the ground state
    b_c_numeric: float  # field where |00...0> becomes the ground state


def magnetization_staircase(n_spins: int, coupling: float) -> StaircaseResult:
    """Exact ground-sector crossing sequence as B increases from 0.

    Within a sector the ground energy is eps_k + B(2k - N), linear in B,
    so consecutive crossings are intersections of straight lines and the
    staircase is the lower envelope of those lines.
    """
    if coupling <= 0:
        raise ParameterError("magnetization staircase requires antiferromagnetic J > 0")
    params = ModelParams(n_spins=n_spins, coupling=coupling)
    eps = np.array(
        [sector_exchange_eigenvalues(params, k)[0] for k in range(n_spins + 1)]
    )
    # Ground sector just above B=0: smallest energy, ties broken toward
    # the smaller slope (smaller n_up), which wins for B > 0.
    near = np.flatnonzero(eps <= eps.min() + 1e-9 * max(1.0, abs(eps.min())))
    k = int(near.min())
    crossings = []
    b_cur = 0.0
    while k > 0:
        best_b, best_k = np.inf, -1
        for kp in range(k):
            b_cross = (eps[kp] - eps[k]) / (2.0 * (k - kp))
            if b_cross < best_b - 1e-12:
                best_b, best_k = b_cross, kp
        b_cur = max(b_cur, float(best_b))
        crossings.append(Crossing(b_value=b_cur, from_n_up=k, to_n_up=best_k))
        k = best_k
    b_c = crossings[-1].b_value if crossings else 0.0
    b_e = 0.0
    for c in crossings:
        if c.to_n_up == 1:
            b_e = c.b_value
    return StaircaseResult(
        n_spins=n_spins,
        coupling=coupling,
        sector_ground_energies=eps,
        crossings=tuple(crossings),
        b_e=b_e,
        b_c_numeric=b_c,
    )


@dataclass(frozen=True)
class EntanglementLengthResult:
    """Concurrence per separation and the resulting entanglement length."""

    c_by_separation: np.ndarray  # C(d) for d = 1..N//2
    l_e: int  # largest d with C(d) > ENTANGLEMENT_TOL, else 0


def entanglement_length(
    n_spins: int,
    coupling: float,
    b_field: float,
    kt: float,
    spectrum: ChainSpectrum | None = None,
) -> EntanglementLengthResult:
    """Concurrence profile C(d) at pair (0, d) and the entanglement length."""
    if spectrum is None:
        spectrum = diagonalize_chain(n_spins, coupling)
    ensemble = gibbs_weights(spectrum, b_field, kt)
    c_vals = np.array(
        [concurrence(pair_rdm(ensemble, 0, d)).concurrence for d in range(1, n_spins // 2 + 1)]
    )
    above = np.flatnonzero(c_vals > ENTANGLEMENT_TOL)
    l_e = int(above.max() + 1) if above.size else 0
    return EntanglementLengthResult(c_by_separation=c_vals, l_e=l_e)


@dataclass(frozen=True)
class LipschitzReport:
    """Largest observed kT |dE| / |dB| over a grid, against the bound 1."""

    max_ratio: float
    worst_point: tuple  # (B_left, B_right, kT)
    satisfied: bool  # max_ratio <= 1 + 1e-6


def lipschitz_check(grid: ScanGrid, pair=(0, 1), spectrum: ChainSpectrum | None = None) -> LipschitzReport:
    """Check that entanglement changes no faster than |dB|/kT along B."""
    if len(grid.b_values) < 2:
        raise ParameterError("lipschitz check needs at least two B samples")
    if np.any(grid.kt_values <= 0):
        raise ParameterError("lipschitz check requires kT > 0")
    sub = ScanGrid(grid.n_spins, grid.coupling, grid.b_values, grid.kt_values, (tuple(pair),))
    rows = scan_pair_measures(sub, spectrum=spectrum)
    e_tab = np.array([r[6] for r in rows]).reshape(len(grid.b_values), len(grid.kt_values))
    max_ratio, worst = 0.0, (grid.b_values[0], grid.b_values[-1], grid.kt_values[0])
    for col, kt in enumerate(grid.kt_values):
        de = np.abs(np.diff(e_tab[:, col]))
        db = np.diff(grid.b_values)
        ratios = kt * de / db
        idx = int(np.argmax(ratios))
        if ratios[idx] > max_ratio:
            max_ratio = float(ratios[idx])
            worst = (float(grid.b_values[idx]), float(grid.b_values[idx + 1]), float(kt))
    return LipschitzReport(max_ratio=max_ratio, worst_point=worst, satisfied=max_ratio <= 1.0 + 1e-6)


@dataclass(frozen=True)
class FigureDataset:
    """Table plus plot payload reproducing one of the reference figures."""

    figure_id: int
    columns: tuple
    rows: list
    plot: dict  # kind "heatmap" or "lines" plus the prepared series/arrays


FIGURE_COLUMNS = ("N", "J") + SCAN_COLUMNS


def figure_dataset(figure_id: int) -> FigureDataset:
    """Dataset for figure 1..5 at the reference parameter settings.

    1: E(B, kT) surface of the N=2 antiferromagnet.
    2: E(B) at kT=0.1, N=6, separations 1..3.
    3: next-nearest E(B) at kT=0.1 for N in {6, 8, 10}.
    4: nearest-neighbor E(kT) at B=4.2 for N in {5..10}.
    5: I(kT) for J=+1 and J=-1 plus E(kT) for J=+1 (N=10, B=4.2).
    """
    if figure_id not in FIGURE_IDS:
        raise ParameterError(f"figure id must be in {FIGURE_IDS}, got {figure_id}")
    build = {1: _figure1, 2: _figure2, 3: _figure3, 4: _figure4, 5: _figure5}[figure_id]
    rows, plot = build()
    return FigureDataset(figure_id=figure_id, columns=FIGURE_COLUMNS, rows=rows, plot=plot)


def _tag(rows, n, j):
    return [(n, j) + row for row in rows]


def _series(rows, x_idx, y_idx, label):
    return {
        "label": label,
        "x": [row[x_idx] for row in rows],
        "y": [row[y_idx] for row in rows],
    }


# Column indices within FIGURE_COLUMNS rows.
_B, _KT, _C, _E, _I = 2, 3, 7, 8, 9


def _figure1():
    grid = ScanGrid(2, 1.0, _DEFAULT_B_GRID, _DEFAULT_KT_GRID, ((0, 1),))
    rows = _tag(scan_pair_measures(grid), 2, 1.0)
    e_surface = np.array([r[_E] for r in rows]).reshape(len(grid.b_values), len(grid.kt_values))
    plot = {
        "kind": "heatmap",
        "x": grid.b_values.tolist(),
        "y": grid.kt_values.tolist(),
        "z": e_surface.T.tolist(),  # one row per kT value
        "xlabel": "B",
        "ylabel": "kT",
        "logy": True,
        "title": "Entanglement E(B, kT), N=2, J=1",
    }
    return rows, plot


def _figure2():
    grid = ScanGrid.from_separations(6, 1.0, _DEFAULT_B_GRID, [0.1], (1, 2, 3))
    rows = _tag(scan_pair_measures(grid), 6, 1.0)
    series = [
        _series([r for r in rows if r[6] == d], _B, _E, f"d={d}") for d in (1, 2, 3)
    ]
    plot = {
        "kind": "lines",
        "series": series,
        "xlabel": "B",
        "ylabel": "E",
        "title": "Entanglement vs field, N=6, kT=0.1, J=1",
    }
    return rows, plot


def _figure3():
    rows, series = [], []
    for n in (6, 8, 10):
        grid = ScanGrid.from_separations(n, 1.0, _DEFAULT_B_GRID, [0.1], (2,))
        tagged = _tag(scan_pair_measures(grid), n, 1.0)
        rows.extend(tagged)
        series.append(_series(tagged, _B, _E, f"N={n}"))
    plot = {
        "kind": "lines",
        "series": series,
        "xlabel": "B",
        "ylabel": "E",
        "title": "Next-nearest entanglement vs field, kT=0.1, J=1",
    }
    return rows, plot


def _figure4():
    rows, series = [], []
    for n in (5, 6, 7, 8, 9, 10):
        grid = ScanGrid.from_separations(n, 1.0, [4.2], _DEFAULT_KT_GRID, (1,))
        tagged = _tag(scan_pair_measures(grid), n, 1.0)
        rows.extend(tagged)
        series.append(_series(tagged, _KT, _E, f"N={n}"))
    plot = {
        "kind": "lines",
        "series": series,
        "xlabel": "kT",
        "ylabel": "E",
        "logx": True,
        "title": "Nearest-neighbor entanglement vs temperature, B=4.2, J=1",
    }
    return rows, plot


def _figure5():
    rows = []
    for j in (1.0, -1.0):
        grid = ScanGrid.from_separations(10, j, [4.2], _DEFAULT_KT_GRID, (1,))
        rows.extend(_tag(scan_pair_measures(grid), 10, j))
    af = [r for r in rows if r[1] > 0]
    fm = [r for r in rows if r[1] < 0]
    plot = {
        "kind": "lines",
        "series": [
            _series(af, _KT, _I, "AF, I"),
            _series(fm, _KT, _I, "F, I"),
            _series(af, _KT, _E, "AF, E"),
        ],
        "xlabel": "kT",
        "ylabel": "I, E",
        "logx": True,
        "title": "Mutual information and entanglement vs temperature, N=10, B=4.2",
    }
    return rows, plot


def closed_form_vs_numeric_critical_field(n_spins: int, coupling: float):
    """Pair (closed-form B_c, staircase B_c) for cross-checking."""
    return (
        critical_field_closed_form(n_spins, coupling),
        magnetization_staircase(n_spins, coupling).b_c_numeric,
    )
