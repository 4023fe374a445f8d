import numpy as np
import pytest

from spinchain import (
    ParameterError,
    ScanGrid,
    critical_field_closed_form,
    diagonalize_chain,
    entanglement_length,
    figure_dataset,
    lipschitz_check,
    magnetization_staircase,
    scan_pair_measures,
)
from spinchain.scans import FIGURE_COLUMNS, SCAN_COLUMNS


class TestScanGrid:
    def test_from_separations(self):
        grid = ScanGrid.from_separations(6, 1.0, [0.0, 1.0], [0.1], (1, 3))
        assert grid.pairs == ((0, 1), (0, 3))

    def test_rejects_bad_axes_and_pairs(self):
        with pytest.raises(ParameterError):
            ScanGrid(4, 1.0, np.array([1.0, 0.5]), np.array([0.1]), ((0, 1),))
        with pytest.raises(ParameterError):
            ScanGrid(4, 1.0, np.array([0.0]), np.array([]), ((0, 1),))
        with pytest.raises(ParameterError):
            ScanGrid(4, 1.0, np.array([0.0]), np.array([0.1]), ((0, 4),))
        with pytest.raises(ParameterError):
            ScanGrid.from_separations(4, 1.0, [0.0], [0.1], (3,))


class TestScanPairMeasures:
    def test_row_order_is_b_major_then_kt_then_pair(self):
        grid = ScanGrid(4, 1.0, np.array([0.0, 1.0]), np.array([0.5, 2.0]), ((0, 1), (0, 2)))
        rows = scan_pair_measures(grid)
        key = [(r[0], r[1], r[2], r[3]) for r in rows]
        assert key == sorted(key, key=lambda t: (t[0], t[1], t[2], t[3]))
        assert len(rows) == 8

    def test_two_qubit_ground_state_is_maximally_entangled(self):
        grid = ScanGrid(2, 1.0, np.array([0.0]), np.array([1e-4]), ((0, 1),))
        (row,) = scan_pair_measures(grid)
        e_val = row[SCAN_COLUMNS.index("E")]
        assert e_val == pytest.approx(1.0, abs=1e-9)

    def test_thermal_enhancement_above_critical_field(self):
        grid = ScanGrid(2, 1.0, np.array([4.6]), np.array([0.01, 1.0]), ((0, 1),))
        cold, warm = scan_pair_measures(grid)
        assert cold[SCAN_COLUMNS.index("E")] < 1e-6
        assert warm[SCAN_COLUMNS.index("E")] > 0.05

    def test_results_independent_of_thread_count(self, monkeypatch):
        grid = ScanGrid(5, 1.0, np.linspace(0.0, 5.0, 6), np.geomspace(0.1, 5.0, 5), ((0, 1), (0, 2)))
        monkeypatch.setenv("SPINCHAIN_THREADS", "1")
        serial = scan_pair_measures(grid)
        monkeypatch.setenv("SPINCHAIN_THREADS", "4")
        parallel = scan_pair_measures(grid)
        assert serial == parallel

    def test_kt_zero_routed_through_ground_manifold(self):
        grid = ScanGrid(2, 1.0, np.array([0.0]), np.array([0.0]), ((0, 1),))
        (row,) = scan_pair_measures(grid)
        assert row[SCAN_COLUMNS.index("C")] == pytest.approx(1.0, abs=1e-12)


class TestStaircase:
    def test_two_qubit_single_crossing(self):
        st = magnetization_staircase(2, 1.0)
        assert len(st.crossings) == 1
        assert st.b_c_numeric == pytest.approx(4.0, abs=1e-12)
        assert st.b_e == 0.0  # the one-up sector is already the B=0 ground sector

    def test_six_spins_b_e_matches_reference(self):
        st = magnetization_staircase(6, 1.0)
        assert 3.23 <= st.b_e <= 3.25
        assert st.b_c_numeric == pytest.approx(4.0, abs=1e-9)

    @pytest.mark.parametrize("n", range(2, 14))
    def test_matches_closed_form_critical_field(self, n):
        st = magnetization_staircase(n, 1.0)
        assert abs(st.b_c_numeric - critical_field_closed_form(n, 1.0)) < 1e-9

    def test_crossings_strictly_increasing_and_ordered(self):
        st = magnetization_staircase(10, 1.0)
        b_vals = [c.b_value for c in st.crossings]
        assert all(b2 > b1 for b1, b2 in zip(b_vals, b_vals[1:]))
        assert st.crossings[0].from_n_up == 5
        assert st.crossings[-1].to_n_up == 0
        assert st.b_e < st.b_c_numeric

    def test_ferromagnet_rejected(self):
        with pytest.raises(ParameterError):
            magnetization_staircase(6, -1.0)


class TestEntanglementLength:
    @pytest.mark.parametrize("b,expected", [(2.0, 1), (3.5, 3), (6.0, 0)])
    def test_six_spin_reference_values(self, b, expected):
        res = entanglement_length(6, 1.0, b, 0.1)
        assert res.l_e == expected

    def test_distance_decay_in_w_window(self):
        res = entanglement_length(6, 1.0, 3.5, 0.1)
        assert res.c_by_separation[0] >= res.c_by_separation[-1] > 0

    def test_shared_spectrum_reuse(self):
        sp = diagonalize_chain(6, 1.0)
        res = entanglement_length(6, 1.0, 2.0, 0.1, spectrum=sp)
        assert res.l_e == 1


class TestLipschitz:
    def test_two_qubit_grid_respects_bound(self):
        grid = ScanGrid(2, 1.0, np.arange(0.0, 6.001, 0.05), np.array([0.5, 1.0, 2.0]), ((0, 1),))
        rep = lipschitz_check(grid)
        assert rep.satisfied
        assert rep.max_ratio <= 1.0 + 1e-6

    def test_flat_region_has_tiny_ratio(self):
        grid = ScanGrid(2, 1.0, np.array([20.0, 20.5, 21.0]), np.array([8.0]), ((0, 1),))
        rep = lipschitz_check(grid)
        assert rep.max_ratio < 1e-3

    def test_requires_multiple_b_samples(self):
        grid = ScanGrid(2, 1.0, np.array([1.0]), np.array([0.5]), ((0, 1),))
        with pytest.raises(ParameterError):
            lipschitz_check(grid)


class TestFigureDatasets:
    def test_unknown_id_rejected(self):
        with pytest.raises(ParameterError):
            figure_dataset(9)

    def test_figure2_structure(self):
        ds = figure_dataset(2)
        assert ds.columns == FIGURE_COLUMNS
        assert len(ds.rows) == 121 * 3
        assert {r[6] for r in ds.rows} == {1, 2, 3}
        assert ds.plot["kind"] == "lines"
        assert len(ds.plot["series"]) == 3

    def test_figure4_curves(self):
        ds = figure_dataset(4)
        assert {r[0] for r in ds.rows} == {5, 6, 7, 8, 9, 10}
        assert all(r[2] == 4.2 for r in ds.rows)
        labels = [s["label"] for s in ds.plot["series"]]
        assert labels == [f"N={n}" for n in (5, 6, 7, 8, 9, 10)]

    def test_figure5_has_both_signs_of_coupling(self):
        ds = figure_dataset(5)
        assert {r[1] for r in ds.rows} == {1.0, -1.0}
        assert [s["label"] for s in ds.plot["series"]] == ["AF, I", "F, I", "AF, E"]

    def test_ferromagnet_mutual_information_rises_with_temperature(self):
        ds = figure_dataset(5)
        fm = [(r[3], r[9]) for r in ds.rows if r[1] < 0]
        i_vals = [i for _, i in fm]
        assert max(i_vals) > i_vals[0] + 1e-6
