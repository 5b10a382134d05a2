"""Sweep invariants tying the independent solution routes together."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qeswell import (
    Family,
    Geometry,
    GridConfig,
    ModelParams,
    anti_isospectral_map,
    gauge_hamiltonian_matrix,
    match_che,
    qes_energies_via_determinant,
    qes_energies_via_recurrence,
    recurrence_coeffs,
    solve_polynomial_system,
    termination_identity_check,
)
from qeswell import numeric

HYP, TRIG = Geometry.HYPERBOLIC, Geometry.TRIGONOMETRIC

GAMMAS = (0.5, 1.0, 2.0, 4.0)
ETAS = (0.5, 1.0, 1.5, 2.0, 3.0)
ORDERS = (0, 1, 2, 3, 4)


def sweep_params():
    for geometry in (HYP, TRIG):
        families = tuple(Family) if geometry is HYP else (Family.TF1, Family.TF2)
        for family in families:
            for gamma in GAMMAS:
                for eta in ETAS:
                    for order in ORDERS:
                        yield ModelParams(geometry, family, gamma, eta, order)


def test_method_equivalence_sweep():
    worst = 0.0
    for p in sweep_params():
        det = qes_energies_via_determinant(p)
        rec = qes_energies_via_recurrence(p)
        direct = solve_polynomial_system(p).energies
        assert det.size == rec.size == direct.size == p.order + 1, p
        worst = max(
            worst,
            float(np.max(np.abs(det - rec))),
            float(np.max(np.abs(det - direct))),
        )
    assert worst < 1e-9


def test_gauge_matrix_equivalence_sweep():
    for p in sweep_params():
        evs = np.sort(np.linalg.eigvals(gauge_hamiltonian_matrix(p)).real)
        assert_allclose(evs, qes_energies_via_recurrence(p), atol=1e-9)


def test_truncation_coefficient_vanishes_everywhere():
    for p in sweep_params():
        a_top, _ = recurrence_coeffs(p, p.order + 1)
        assert a_top == 0.0


def test_termination_identity_sweep():
    for p in sweep_params():
        assert termination_identity_check(match_che(p))


def test_anti_isospectral_energy_sets():
    for p in sweep_params():
        if p.geometry is TRIG or p.family in (Family.TF3, Family.TF4):
            continue
        partner = anti_isospectral_map(p)
        own = qes_energies_via_determinant(p)
        flipped = qes_energies_via_determinant(partner)
        assert_allclose(np.sort(flipped), -np.sort(own)[::-1], atol=1e-9)


def test_potential_coincidence_spectra():
    # equal (gamma, eta, M) means the same operator: identical matrices and
    # hence identical numeric spectra on a shared grid
    grid = GridConfig(half_width=3.0, points=2000)
    a = ModelParams(HYP, Family.TF1, 2.0, 2.0, 0)
    b = ModelParams(HYP, Family.TF4, 2.0, 2.0, 1)
    spec_a = numeric.eigen_lowest(numeric.fd_hamiltonian(a, grid), 6)
    spec_b = numeric.eigen_lowest(numeric.fd_hamiltonian(b, grid), 6)
    assert np.max(np.abs(spec_a - spec_b)) < 1e-10
