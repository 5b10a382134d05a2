"""Acceptance battery: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria complete.
"""

import csv
import math
import time

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qeswell import (
    Family,
    Geometry,
    GridConfig,
    ModelParams,
    anti_isospectral_map,
    emit_wavefunctions,
    gauge_hamiltonian_matrix,
    match_che,
    qes_energies_via_determinant,
    qes_energies_via_recurrence,
    recurrence_coeffs,
    series_coefficients,
    solve_polynomial_system,
    termination_identity_check,
)
from qeswell import bethe, liealg, numeric
from reference_values import BOLD, COLUMNS, ROOT_PAIRS, qes_set

HYP, TRIG = Geometry.HYPERBOLIC, Geometry.TRIGONOMETRIC


def three_method_sets(params):
    return (
        solve_polynomial_system(params).energies,
        qes_energies_via_determinant(params),
        qes_energies_via_recurrence(params),
    )


def test_criterion_1_hyperbolic_exactness():
    start = time.perf_counter()
    for family in (Family.TF1, Family.TF2):
        for order in (0, 1, 2):
            p = ModelParams(HYP, family, 2.0, 2.0, order)
            direct, det, rec = three_method_sets(p)
            assert np.max(np.abs(direct - det)) < 1e-9
            assert np.max(np.abs(direct - rec)) < 1e-9
            assert np.max(np.abs(det - rec)) < 1e-9
            assert_allclose(det, qes_set(1, family, order), atol=1e-3)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(f"CRITERION 1: PASS - hyperbolic TF1/TF2 exact sets, three methods ({elapsed:.2f}s)")


def test_criterion_2_tf3_tf4_exactness():
    start = time.perf_counter()
    for family in (Family.TF3, Family.TF4):
        for order in (0, 1, 2):
            p = ModelParams(HYP, family, 2.0, 2.0, order)
            det = qes_energies_via_determinant(p)
            rec = qes_energies_via_recurrence(p)
            direct = solve_polynomial_system(p).energies
            assert np.max(np.abs(det - rec)) < 1e-9
            assert np.max(np.abs(det - direct)) < 1e-9
            assert_allclose(det, qes_set(2, family, order), atol=1e-3)
            assert_allclose(rec, qes_set(2, family, order), atol=1e-3)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(f"CRITERION 2: PASS - hyperbolic TF3/TF4 exact sets ({elapsed:.2f}s)")


def test_criterion_3_anti_isospectrality():
    start = time.perf_counter()
    for family in (Family.TF1, Family.TF2):
        for order in (0, 1, 2):
            hyp = ModelParams(HYP, family, 2.0, 2.0, order)
            trig = anti_isospectral_map(hyp)
            hyp_sets = three_method_sets(hyp)
            trig_sets = three_method_sets(trig)
            for t_set in trig_sets:
                for h_set in hyp_sets:
                    assert np.max(np.abs(np.sort(t_set) + np.sort(h_set)[::-1])) < 1e-9
            assert_allclose(trig_sets[1], qes_set(3, family, order), atol=1e-3)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(f"CRITERION 3: PASS - trigonometric sets are sign-flipped partners ({elapsed:.2f}s)")


def test_criterion_4_bethe_roots():
    for (geo_key, family, order), pairs in ROOT_PAIRS.items():
        if (geo_key, family, order) == ("trig", Family.TF2, 2):
            continue  # extra reference checked in the unit suite
        geometry = HYP if geo_key == "hyp" else TRIG
        spec = solve_polynomial_system(ModelParams(geometry, family, 2.0, 2.0, order))
        for lvl, expected in zip(spec.levels, pairs):
            assert_allclose(lvl.bethe_roots, expected, atol=1e-3)

    # first series coefficient is the negative reciprocal of the single root
    p = ModelParams(HYP, Family.TF1, 2.0, 2.0, 1)
    che = match_che(p)
    for lvl in solve_polynomial_system(p).levels:
        v1 = series_coefficients(che, lvl.energy).values[1]
        assert abs(v1 + 1.0 / lvl.bethe_roots[0]) < 1e-9
    print("CRITERION 4: PASS - printed Bethe roots and v1 = -1/z identity")


def test_criterion_5_numeric_tables(table_battery, harmonic_levels):
    tables, battery_time = table_battery
    harmonic, harmonic_time = harmonic_levels
    for (table_id, family, order), expected in COLUMNS.items():
        col = next(
            c for c in tables[table_id].columns if c.family is family and c.order == order
        )
        tol = 5e-3 if tables[table_id].geometry is HYP else 1e-2
        assert_allclose([e.numeric for e in col.entries], expected, atol=tol)
    assert_allclose(harmonic, [1.0, 3.0, 5.0], atol=1e-4)
    total = battery_time + harmonic_time
    assert total < 60.0
    print(f"CRITERION 5: PASS - 18 numeric columns plus oscillator self-test ({total:.1f}s)")


def test_criterion_6_property_suite():
    gammas, etas, orders = (0.5, 1.0, 2.0, 4.0), (0.5, 1.0, 1.5, 2.0, 3.0), range(5)
    worst = 0.0
    for geometry in (HYP, TRIG):
        families = tuple(Family) if geometry is HYP else (Family.TF1, Family.TF2)
        for family in families:
            for g in gammas:
                for e in etas:
                    for n in orders:
                        p = ModelParams(geometry, family, g, e, n)
                        det = qes_energies_via_determinant(p)
                        rec = qes_energies_via_recurrence(p)
                        direct = solve_polynomial_system(p).energies
                        assert det.size == n + 1
                        worst = max(
                            worst,
                            float(np.max(np.abs(det - rec))),
                            float(np.max(np.abs(det - direct))),
                        )
                        a_top, _ = recurrence_coeffs(p, n + 1)
                        assert a_top == 0.0
                        assert termination_identity_check(match_che(p))
                        gauge = np.sort(np.linalg.eigvals(gauge_hamiltonian_matrix(p)).real)
                        assert np.max(np.abs(gauge - rec)) < 1e-9
    assert worst < 1e-9

    # identical couplings produce identical spectra on a shared grid
    grid = GridConfig(half_width=3.0, points=2000)
    same_a = numeric.eigen_lowest(
        numeric.fd_hamiltonian(ModelParams(HYP, Family.TF1, 2.0, 2.0, 0), grid), 6
    )
    same_b = numeric.eigen_lowest(
        numeric.fd_hamiltonian(ModelParams(HYP, Family.TF4, 2.0, 2.0, 1), grid), 6
    )
    assert np.max(np.abs(same_a - same_b)) < 1e-10

    # wavefunction assembly agrees between the direct and algebraic routes
    for geometry, half in ((HYP, 2.5), (TRIG, 1.4)):
        p = ModelParams(geometry, Family.TF1, 2.0, 2.0, 1)
        xs = np.linspace(-half, half, 501)
        xs = xs[np.abs(xs) > 1e-6]
        spec = solve_polynomial_system(p)
        wf_b = bethe.assemble_wavefunction(p, spec.levels[0], xs)
        wf_l = liealg.lie_wavefunction(p, spec.levels[0].energy, xs)
        ratio = wf_l.psi / wf_b.psi
        center = np.median(ratio)
        assert np.max(np.abs(ratio - center)) / abs(center) < 1e-8

    # order-2 convergence of the difference scheme
    errors = []
    for n in (1000, 2000):
        op = numeric.fd_hamiltonian(
            ModelParams(HYP, Family.TF1, 2.0, 2.0, 0), GridConfig(half_width=3.0, points=n)
        )
        errors.append(abs(numeric.eigen_lowest(op, 1)[0] - (-22.0)))
    assert errors[0] / errors[1] >= 3.5
    print(f"CRITERION 6: PASS - property suite (worst method deviation {worst:.2e})")


def test_figure_data_emission(tmp_path):
    # even hyperbolic family: nodeless ground state
    p1 = ModelParams(HYP, Family.TF1, 2.0, 2.0, 0)
    f1 = emit_wavefunctions(p1, [0], -2.5, 2.5, 801, tmp_path / "tf1.csv")
    # odd hyperbolic family: every state vanishes at the origin
    p2 = ModelParams(HYP, Family.TF2, 2.0, 2.0, 1)
    f2 = emit_wavefunctions(p2, [0, 1], -2.5, 2.5, 801, tmp_path / "tf2.csv")
    # trigonometric even family: three states across one cell
    p3 = ModelParams(TRIG, Family.TF1, 2.0, 2.0, 2)
    f3 = emit_wavefunctions(p3, [0, 1, 2], -math.pi / 2 + 0.01, math.pi / 2 - 0.01, 801,
                            tmp_path / "trig.csv")

    def load(path):
        with open(path) as fh:
            rows = list(csv.reader(fh))
        header = rows[0]
        data = np.array([[float(v) for v in row] for row in rows[1:]])
        return header, data

    def nodes(values):
        signs = np.sign(values[np.abs(values) > 1e-6])
        return int(np.sum(signs[1:] != signs[:-1]))

    header, data = load(f1)
    assert header == ["x", "potential", "psi_0"]
    assert nodes(data[:, 2]) == 0

    _, data = load(f2)
    mid = data[data.shape[0] // 2]
    assert mid[0] == 0.0 and mid[2] == 0.0 and mid[3] == 0.0
    assert nodes(data[:, 2]) == 1 and nodes(data[:, 3]) == 3

    header, data = load(f3)
    assert len(header) == 5
    assert nodes(data[:, 2]) == 0 and nodes(data[:, 3]) == 2 and nodes(data[:, 4]) == 4
    print("FIGURE DATA: PASS - emitted samples parse; node counts match parity structure")
