"""Tests for grid scans, region classification and contour tracing."""
import math

import numpy as np
import pytest

from dipolepair.dipolar import CouplingParams, spectrum
from dipolepair.linalg import BellLabel
from dipolepair.scan import (
    BoundaryQuantity,
    GridSpec,
    GridTooLargeError,
    Region,
    bisect_root,
    boundary_field,
    boundary_rows,
    dominant_map,
    dominant_rows,
    evaluate_point,
    scan_grid,
    scan_rows,
    trace_boundary,
)

# independently frozen root of max weight = 1/2 along v = 1 (brentq oracle)
U_STAR_V1 = 2.679576426508122


class TestGridSpec:
    def test_coordinates(self):
        g = GridSpec(0.0, 1.0, -1.0, 1.0, 2, 3)
        np.testing.assert_array_equal(g.u_coords(), [0.0, 1.0])
        np.testing.assert_array_equal(g.v_coords(), [-1.0, 0.0, 1.0])

    def test_corners_exact(self):
        g = GridSpec(-10.0, 10.0, -10.0, 10.0, 81, 81)
        assert g.u_coords()[0] == -10.0 and g.u_coords()[-1] == 10.0
        assert g.v_coords()[0] == -10.0 and g.v_coords()[-1] == 10.0

    def test_rejects_reversed_bounds(self):
        with pytest.raises(ValueError):
            GridSpec(1.0, 0.0, 0.0, 1.0, 2, 2)

    def test_rejects_single_point_axis(self):
        with pytest.raises(ValueError):
            GridSpec(0.0, 1.0, 0.0, 1.0, 1, 2)

    def test_point_budget(self):
        with pytest.raises(GridTooLargeError):
            GridSpec(0.0, 1.0, 0.0, 1.0, 100_000, 10_000)
        # the guard subclasses ValueError so generic handling still works
        assert issubclass(GridTooLargeError, ValueError)


class TestEvaluatePoint:
    def test_infinite_temperature(self):
        rec = evaluate_point(CouplingParams(0.0, 0.0))
        assert rec.chsh == 0.0
        assert rec.negativity == 0.0
        assert rec.fidelity == pytest.approx(0.5)
        assert rec.dominant_label is BellLabel.PHI_PLUS
        assert rec.dominant_weight == 0.25
        assert rec.region is Region.SEPARABLE

    def test_entangled_local_point(self):
        rec = evaluate_point(CouplingParams(3.0, 1.0))
        assert rec.region is Region.ENTANGLED_LOCAL
        assert rec.negativity == pytest.approx(0.034446645388522934, abs=1e-14)
        assert rec.chsh == pytest.approx(1.3070647024048123, abs=1e-14)
        assert rec.fidelity == pytest.approx(0.689631096925682, abs=1e-14)
        assert rec.dominant_label is BellLabel.PSI_PLUS

    def test_nonlocal_point(self):
        rec = evaluate_point(CouplingParams(30.0, 0.0))
        assert rec.region is Region.NONLOCAL
        assert rec.chsh > 2.0
        assert rec.negativity > 0.49

    def test_region_consistency(self):
        rng = np.random.default_rng(71)
        for _ in range(200):
            rec = evaluate_point(
                CouplingParams(rng.uniform(-12, 12), rng.uniform(-12, 12))
            )
            if rec.region is Region.SEPARABLE:
                assert rec.negativity < 1e-12
            if rec.region is Region.NONLOCAL:
                assert rec.chsh > 2.0
                assert rec.negativity > 1e-12
            if rec.chsh > 2.0 + 1e-12:
                assert rec.region is Region.NONLOCAL


class TestScanGrid:
    def test_row_major_order(self):
        g = GridSpec(0.0, 1.0, 10.0, 11.0, 2, 2)
        records = scan_grid(g)
        assert [(r.u, r.v) for r in records] == [
            (0.0, 10.0), (1.0, 10.0), (0.0, 11.0), (1.0, 11.0),
        ]

    def test_matches_pointwise_evaluation(self):
        g = GridSpec(-3.0, 3.0, -2.0, 2.0, 5, 4)
        records = scan_grid(g)
        for rec in records:
            direct = evaluate_point(CouplingParams(rec.u, rec.v))
            assert rec == direct

    def test_worker_count_invariant(self):
        g = GridSpec(-5.0, 5.0, -5.0, 5.0, 11, 11)
        assert scan_grid(g, workers=1) == scan_grid(g, workers=3)

    def test_v_parity_of_reported_measures(self):
        # u fixed, v -> -v leaves chsh, negativity and fidelity unchanged
        g = GridSpec(-6.0, 6.0, -4.0, 4.0, 7, 9)
        records = scan_grid(g)
        by_coord = {(r.u, r.v): r for r in records}
        for (u, v), rec in by_coord.items():
            mirror = by_coord[(u, -v)]
            assert abs(rec.chsh - mirror.chsh) < 1e-12
            assert abs(rec.negativity - mirror.negativity) < 1e-12
            assert abs(rec.fidelity - mirror.fidelity) < 1e-12


class TestDominantMap:
    def test_ground_state_labels(self):
        g = GridSpec(-10.0, 10.0, -10.0, 10.0, 3, 3)
        entries = {(u, v): label for u, v, label, _ in dominant_map(g)}
        assert entries[(10.0, 0.0)] is BellLabel.PSI_PLUS
        assert entries[(-10.0, 10.0)] is BellLabel.PHI_MINUS
        assert entries[(-10.0, -10.0)] is BellLabel.PHI_PLUS

    def test_psi_minus_never_dominant(self):
        g = GridSpec(-10.0, 10.0, -10.0, 10.0, 21, 21)
        for _, _, label, _ in dominant_map(g):
            assert label is not BellLabel.PSI_MINUS

    def test_weights_match_spectrum(self):
        g = GridSpec(-2.0, 2.0, -2.0, 2.0, 5, 5)
        for u, v, label, weight in dominant_map(g):
            sd = spectrum(CouplingParams(u, v))
            assert weight == sd.weight(label)
            assert weight == float(sd.weights.max())


class TestBisection:
    def test_linear_root(self):
        root = bisect_root(lambda x: x - 0.3, 0.0, 1.0, -0.3, 0.7)
        assert root == pytest.approx(0.3, abs=1e-15)

    def test_runs_to_floating_point_exhaustion(self):
        f = lambda x: math.tanh(3.0 * (x - 1.0 / 3.0))
        root = bisect_root(f, 0.0, 1.0, f(0.0), f(1.0))
        assert abs(root - 1.0 / 3.0) < 1e-15

    def test_identical_paths_for_proportional_fields(self):
        # sign-driven bisection cannot tell f from (2/3) f
        f = lambda x: math.sin(x) - 0.42
        g = lambda x: (2.0 / 3.0) * (math.sin(x) - 0.42)
        a = bisect_root(f, 0.0, 1.5, f(0.0), f(1.5))
        b = bisect_root(g, 0.0, 1.5, g(0.0), g(1.5))
        assert a == b

    def test_rejects_bad_bracket(self):
        with pytest.raises(ValueError):
            bisect_root(lambda x: x, 1.0, 2.0, 1.0, 2.0)

    def test_entanglement_onset_on_segment(self):
        field = boundary_field(BoundaryQuantity.NEGATIVITY)
        f = lambda u: field(u, 1.0)
        root = bisect_root(f, 2.0, 3.0, f(2.0), f(3.0))
        assert root == pytest.approx(U_STAR_V1, abs=1e-12)
        # max weight passes through 1/2 there
        sd = spectrum(CouplingParams(root, 1.0))
        assert float(sd.weights.max()) == pytest.approx(0.5, abs=1e-12)


class TestBoundaryFields:
    def test_signs_at_reference_points(self):
        neg = boundary_field(BoundaryQuantity.NEGATIVITY)
        chsh = boundary_field(BoundaryQuantity.CHSH_MINUS_2)
        fid = boundary_field(BoundaryQuantity.FIDELITY_MINUS_TWO_THIRDS)
        assert neg(0.0, 0.0) < 0 and neg(30.0, 0.0) > 0
        assert chsh(3.0, 1.0) < 0 and chsh(30.0, 0.0) > 0
        assert fid(0.0, 0.0) < 0 and fid(3.0, 1.0) > 0

    def test_fidelity_field_is_proportional_to_negativity_field(self):
        neg = boundary_field(BoundaryQuantity.NEGATIVITY)
        fid = boundary_field(BoundaryQuantity.FIDELITY_MINUS_TWO_THIRDS)
        rng = np.random.default_rng(77)
        for _ in range(100):
            u, v = rng.uniform(-10, 10, size=2)
            assert abs(fid(u, v) - (2.0 / 3.0) * neg(u, v)) < 1e-14


class TestTraceBoundary:
    def test_residuals_below_tolerance(self):
        g = GridSpec(-8.0, 8.0, -8.0, 8.0, 17, 17)
        for quantity in BoundaryQuantity:
            field = boundary_field(quantity)
            for poly in trace_boundary(quantity, g):
                assert poly.quantity is quantity
                for u, v in poly.points:
                    assert abs(field(u, v)) < 1e-9

    def test_entanglement_onset_crosses_frozen_root(self):
        g = GridSpec(2.0, 3.0, 0.5, 1.5, 2, 3)  # contains the v = 1 row
        polys = trace_boundary(BoundaryQuantity.NEGATIVITY, g)
        points = [pt for poly in polys for pt in poly.points]
        on_row = [u for u, v in points if v == 1.0]
        assert len(on_row) == 1
        assert on_row[0] == pytest.approx(U_STAR_V1, abs=1e-12)

    def test_no_chsh_contour_in_local_window(self):
        g = GridSpec(-1.0, 1.0, -1.0, 1.0, 9, 9)
        assert trace_boundary(BoundaryQuantity.CHSH_MINUS_2, g) == []

    def test_deterministic(self):
        g = GridSpec(-9.0, 9.0, -9.0, 9.0, 15, 15)
        a = trace_boundary(BoundaryQuantity.NEGATIVITY, g)
        b = trace_boundary(BoundaryQuantity.NEGATIVITY, g)
        assert a == b

    def test_fidelity_contour_coincides_with_entanglement_onset(self):
        g = GridSpec(-10.0, 10.0, -10.0, 10.0, 21, 21)
        neg_pts = sorted(
            pt for poly in trace_boundary(BoundaryQuantity.NEGATIVITY, g)
            for pt in poly.points
        )
        fid_pts = sorted(
            pt for poly in trace_boundary(
                BoundaryQuantity.FIDELITY_MINUS_TWO_THIRDS, g
            )
            for pt in poly.points
        )
        assert len(neg_pts) == len(fid_pts)
        for (u1, v1), (u2, v2) in zip(neg_pts, fid_pts):
            assert math.hypot(u1 - u2, v1 - v2) < 2e-9

    def test_rejects_bad_tolerance(self):
        g = GridSpec(0.0, 1.0, 0.0, 1.0, 2, 2)
        with pytest.raises(ValueError):
            trace_boundary(BoundaryQuantity.NEGATIVITY, g, tol=0.0)


class TestCsvRows:
    def test_scan_rows_shape_and_header(self):
        g = GridSpec(0.0, 1.0, 0.0, 1.0, 2, 2)
        lines = list(scan_rows(scan_grid(g)))
        assert lines[0] == "u,v,chsh,negativity,fidelity,dominant_weight,dominant_label,region"
        assert len(lines) == 5
        assert lines[1].split(",")[0] == "0.0"

    def test_scan_rows_roundtrip_floats(self):
        rec = evaluate_point(CouplingParams(3.0, 1.0))
        line = list(scan_rows([rec]))[1]
        fields = line.split(",")
        assert float(fields[3]) == rec.negativity
        assert float(fields[4]) == rec.fidelity
        assert fields[6] == "psi_plus"
        assert fields[7] == "entangled_local"

    def test_normalized_negativity_doubles(self):
        rec = evaluate_point(CouplingParams(3.0, 1.0))
        plain = list(scan_rows([rec]))[1].split(",")[3]
        doubled = list(scan_rows([rec], normalized_negativity=True))[1].split(",")[3]
        assert float(doubled) == 2.0 * float(plain)

    def test_boundary_rows(self):
        g = GridSpec(2.0, 3.0, 0.5, 1.5, 2, 3)
        lines = list(boundary_rows(trace_boundary(BoundaryQuantity.NEGATIVITY, g)))
        assert lines[0] == "contour_id,u,v"
        assert all(line.split(",")[0] == "0" for line in lines[1:])

    def test_dominant_rows(self):
        g = GridSpec(0.0, 1.0, 0.0, 1.0, 2, 2)
        lines = list(dominant_rows(dominant_map(g)))
        assert lines[0] == "u,v,dominant_label,dominant_weight"
        assert len(lines) == 5
        assert lines[1].split(",")[2] == "phi_plus"
