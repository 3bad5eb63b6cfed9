"""Tests for finite-stage factorizations through matrix algebras."""

import numpy as np
import pytest

from lpalg import (
    CbEstimate,
    CcElement,
    ConcreteAlgebra,
    CovariantRep,
    Factorization,
    FolnerSet,
    LinearMap,
    ZWindow,
    compose_factorizations,
    corner_embed,
    corner_project,
    corner_restrict,
    crossed_nuclearity_witness,
    cyclic_coordinate_rotation,
    cyclic_group,
    folner_phi,
    folner_phi_cb_certificate,
    folner_phi_map,
    folner_psi,
    folner_psi_map,
    folner_roundtrip,
    identity_factorization,
    lift_factorization,
    measure_roundtrip,
    psi_contractivity_certificate,
    random_cc_element,
    rotation_demo,
    trivial_action,
    truncate_cb_certificate,
    truncate_map,
    truncate_stable,
)
from lpalg.errors import CertificateError

CB_SLACK = 1e-6
LIGHT = {"trials": 4, "ascent_steps": 2, "restarts": 6, "max_iters": 60}
EST = {"restarts": 8, "max_iters": 80}


def _rotation_rep(n, p):
    return CovariantRep(ConcreteAlgebra(n), cyclic_coordinate_rotation(n, 1), p)


# ---------------------------------------------------------------------------
# the two Folner maps
# ---------------------------------------------------------------------------

def test_folner_phi_matches_compressed_integrated_form():
    rep = _rotation_rep(6, 2.0)
    folner = FolnerSet(cyclic_group(6), (0, 1, 2))
    rng = np.random.default_rng(0)
    f = random_cc_element(rng, cyclic_group(6), 6)
    out = folner_phi(f, folner, rep)
    assert out.shape == (18, 18)
    full = rep.integrated(f)
    sel = [rep.position_index(m) for m in folner.members]
    idx = np.concatenate([np.arange(6 * t, 6 * t + 6) for t in sel])
    assert np.allclose(out, full[np.ix_(idx, idx)], atol=1e-12)


def test_whole_group_roundtrip_is_exact():
    rep = _rotation_rep(12, 1.5)
    folner = FolnerSet(cyclic_group(12), tuple(range(12)))
    f = random_cc_element(np.random.default_rng(1), cyclic_group(12), 12)
    rt = folner_roundtrip(f, folner, rep, **EST)
    assert rt["error"] == 0.0
    assert rt["bound"] == 0.0


def test_half_window_roundtrip_matches_ratio_bound():
    # F = {0..5} in Z/12 and a single-shift element: the defect is exactly
    # the boundary ratio 1/6 of the Folner set, and the bound is attained.
    rep = _rotation_rep(12, 1.5)
    folner = FolnerSet(cyclic_group(12), tuple(range(6)))
    f = CcElement.delta(cyclic_group(12), 1, np.eye(12, dtype=complex))
    rt = folner_roundtrip(f, folner, rep, **EST)
    assert rt["error"] == pytest.approx(1 / 6, abs=1e-12)
    assert rt["error"] == pytest.approx(rt["bound"], abs=1e-12)


def test_integer_window_roundtrip_values():
    rep = CovariantRep(ConcreteAlgebra(1), trivial_action(ZWindow(25), 1), 1.5)
    f = CcElement.delta(ZWindow(25), 1, np.eye(1, dtype=complex))
    rt21 = folner_roundtrip(f, FolnerSet(ZWindow(25), tuple(range(-10, 11))), rep, **EST)
    assert rt21["error"] == pytest.approx(1 / 21, abs=1e-12)
    g = CcElement.delta(ZWindow(25), 2, np.eye(1, dtype=complex))
    rt41 = folner_roundtrip(g, FolnerSet(ZWindow(25), tuple(range(-20, 21))), rep, **EST)
    assert rt41["error"] == pytest.approx(2 / 41, abs=1e-12)


def test_folner_certificates_are_contractive():
    rep = _rotation_rep(6, 3.0)
    folner = FolnerSet(cyclic_group(6), (0, 1, 2))
    phi = folner_phi_cb_certificate(folner, rep, n_max=2, rng=np.random.default_rng(2),
                                    **LIGHT)
    psi = psi_contractivity_certificate(folner, rep, k_max=2, rng=np.random.default_rng(3),
                                        **LIGHT)
    assert phi.best <= 1.0 + CB_SLACK
    assert psi.best <= 1.0 + CB_SLACK


def test_folner_psi_requires_matching_shape():
    rep = _rotation_rep(4, 2.0)
    folner = FolnerSet(cyclic_group(4), (0, 1))
    with pytest.raises(ValueError):
        folner_psi(np.eye(3, dtype=complex), folner, rep)


def test_folner_maps_package_dimensions():
    rep = _rotation_rep(4, 2.0)
    folner = FolnerSet(cyclic_group(4), (0, 1, 2))
    phi = folner_phi_map(folner, rep)
    psi = folner_psi_map(folner, rep)
    assert phi.domain_dim == 16 and phi.codomain_dim == 12
    assert psi.domain_dim == 12 and psi.codomain_dim == 16


# ---------------------------------------------------------------------------
# factorization bookkeeping
# ---------------------------------------------------------------------------

def test_identity_factorization_is_exact():
    fact = identity_factorization(3, 2.0, rng=np.random.default_rng(4))
    assert fact.target_dim == 3
    assert fact.worst_error == 0.0
    assert fact.phi_cb.best <= 1.0 + CB_SLACK


def test_factorization_rejects_expansive_certificates():
    ident = LinearMap.identity(2)
    bad = CbEstimate(levels=[(1, 1.01)])
    good = CbEstimate(levels=[(1, 1.0)])
    with pytest.raises(CertificateError):
        Factorization(phi=ident, psi=ident, target_dim=2, phi_cb=bad, psi_cb=good)


def test_measure_roundtrip_reports_per_element_errors():
    shrink = LinearMap(2, 2, apply_fn=lambda a: 0.75 * np.asarray(a, dtype=complex))
    ident = LinearMap.identity(2)
    elements = {"x": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)}
    errors = measure_roundtrip(ident, shrink, elements, 2.0)
    assert errors["x"] == pytest.approx(0.25, abs=1e-10)


def test_lift_scales_errors_by_block_count():
    base = identity_factorization(2, 2.0, rng=np.random.default_rng(5))
    shrink = LinearMap(2, 2, apply_fn=lambda a: (1 - 1e-3) * np.asarray(a, dtype=complex))
    lossy = Factorization(phi=base.phi, psi=shrink, target_dim=2,
                          phi_cb=base.phi_cb, psi_cb=base.psi_cb,
                          roundtrip_errors={}, p=2.0)
    gen = np.random.default_rng(6)
    for n in (1, 2, 3):
        grid = gen.standard_normal((n, n, 2, 2)) + 1j * gen.standard_normal((n, n, 2, 2))
        entry_errs = [
            measure_roundtrip(lossy.phi, lossy.psi, {"e": grid[i, j]}, 2.0)["e"]
            for i in range(n) for j in range(n)
        ]
        lifted = lift_factorization(lossy, n, entries={"e": grid},
                                    rng=np.random.default_rng(6))
        assert lifted.target_dim == 2 * n
        assert lifted.roundtrip_errors["e"] <= n * n * max(entry_errs) + 1e-12


def test_corner_embed_project_are_mutually_inverse():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    iota = corner_embed(5, 2)
    rho = corner_project(5, 2)
    big = iota(a)
    assert big.shape == (10, 10)
    assert np.array_equal(big[:2, :2], a)
    assert np.all(big[2:, :] == 0.0) and np.all(big[:, 2:] == 0.0)
    assert np.array_equal(rho(big), a)


def test_corner_restrict_of_exact_parent_is_exact():
    parent = identity_factorization(4, 1.5, rng=np.random.default_rng(8))
    rng = np.random.default_rng(9)
    tests = {f"a{i}": rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
             for i in range(3)}
    fact = corner_restrict(parent, 2, test_elements=tests,
                           rng=np.random.default_rng(10), cert_opts=dict(LIGHT, n_max=2))
    assert fact.worst_error == 0.0
    assert fact.phi_cb.best <= 1.0 + CB_SLACK
    assert fact.psi_cb.best <= 1.0 + CB_SLACK


def test_truncate_keeps_leading_blocks():
    t = np.arange(36, dtype=float).reshape(6, 6)
    out = truncate_stable(t, 2, block_dim=2)
    assert out.shape == (6, 6)
    assert np.array_equal(out[:4, :4], t[:4, :4])
    assert np.all(out[4:, :] == 0.0) and np.all(out[:, 4:] == 0.0)
    with pytest.raises(ValueError):
        truncate_stable(t, 0, block_dim=2)
    with pytest.raises(ValueError):
        truncate_stable(t, 4, block_dim=2)


def test_truncate_certificate_contractive():
    cert = truncate_cb_certificate(4, 2, 2, 3.0, n_max=2,
                                   rng=np.random.default_rng(11), **LIGHT)
    assert cert.best <= 1.0 + CB_SLACK
    tm = truncate_map(4, 2, 2)
    assert tm.domain_dim == 8 and tm.codomain_dim == 8


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def test_compose_identity_bridges_is_lossless():
    inner = identity_factorization(2, 2.0, rng=np.random.default_rng(12))
    ident = LinearMap.identity(2)
    tests = {"x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)}
    fact = compose_factorizations(ident, ident, inner, tests, (0.1, 0.0), p=2.0,
                                  rng=np.random.default_rng(13),
                                  cert_opts=dict(LIGHT, n_max=2))
    assert fact.worst_error == 0.0


def test_compose_rejects_expansive_bridge():
    inner = identity_factorization(2, 2.0, rng=np.random.default_rng(14))
    double = LinearMap(2, 2, apply_fn=lambda a: 2.0 * np.asarray(a, dtype=complex))
    ident = LinearMap.identity(2)
    with pytest.raises(CertificateError):
        compose_factorizations(double, ident, inner, {}, (0.1, 0.0), p=2.0,
                               rng=np.random.default_rng(15),
                               cert_opts=dict(LIGHT, n_max=2))


def test_compose_rejects_budget_overrun():
    shrink = LinearMap(2, 2, apply_fn=lambda a: 0.5 * np.asarray(a, dtype=complex))
    ident = LinearMap.identity(2)
    inner = Factorization(phi=ident, psi=shrink, target_dim=2,
                          phi_cb=CbEstimate(levels=[(1, 1.0)]),
                          psi_cb=CbEstimate(levels=[(1, 1.0)]),
                          roundtrip_errors={}, p=2.0)
    tests = {"x": np.eye(2, dtype=complex)}
    with pytest.raises(CertificateError):
        compose_factorizations(ident, ident, inner, tests, (0.01, 0.01), p=2.0,
                               rng=np.random.default_rng(16),
                               cert_opts=dict(LIGHT, n_max=2))


# ---------------------------------------------------------------------------
# end-to-end witnesses
# ---------------------------------------------------------------------------

def test_witness_on_finite_group_is_exact():
    carrier = cyclic_group(6)
    rng = np.random.default_rng(17)
    f = random_cc_element(rng, carrier, 6)
    fact, report = crossed_nuclearity_witness(
        [f], 0.3, ConcreteAlgebra(6), carrier, cyclic_coordinate_rotation(6, 1), 3.0,
        rng=np.random.default_rng(18), cert_opts=dict(LIGHT, n_max=2))
    assert report["passed"]
    assert report["folner"]["members"] == list(range(6))
    assert all(entry["roundtrip_error"] == 0.0 for entry in report["elements"])
    assert fact.target_dim == 6 * 6


def test_witness_input_validation():
    carrier = cyclic_group(4)
    with pytest.raises(ValueError):
        crossed_nuclearity_witness([], 0.3, ConcreteAlgebra(4), carrier,
                                   cyclic_coordinate_rotation(4, 1), 2.0)
    f = CcElement.delta(carrier, 0, np.eye(4, dtype=complex))
    with pytest.raises(ValueError):
        crossed_nuclearity_witness([f], -1.0, ConcreteAlgebra(4), carrier,
                                   cyclic_coordinate_rotation(4, 1), 2.0)


def test_rotation_demo_rejects_non_coprime_angle():
    with pytest.raises(ValueError):
        rotation_demo(12, 4, 2.0, 0.3)
