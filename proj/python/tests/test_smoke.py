import math

import numpy as np
import pytest

import ptcross


def test_hamiltonian_and_closed_form():
    p = ptcross.ModelParams.from_AB(1.0, 1.0)
    h = ptcross.build_hamiltonian(p)
    assert h.shape == (4, 4)
    numeric = np.sort(np.linalg.eigvals(h).real)
    closed = np.sort(np.array(ptcross.closed_form_energies(p)).real)
    phi = (1 + math.sqrt(5)) / 2
    assert np.allclose(numeric, closed, atol=1e-12)
    assert closed[-1] == pytest.approx(phi)


def test_eigendecompose_jordan_block():
    h = ptcross.build_hamiltonian(ptcross.ModelParams.from_couplings(0.5, 1.0))
    eig = ptcross.eigendecompose(h, 1e-9)
    assert not eig.spectrum.diagonalizable()
    assert eig.spectrum.reality == ptcross.Reality.AllReal
    zero = [c for c in eig.spectrum.clusters if abs(c.value) < 1e-6]
    assert [(c.algebraic, c.geometric) for c in zero] == [(2, 1)]


def test_metric_family_and_hermitization():
    p = ptcross.ModelParams.from_couplings(0.3, -0.4)
    h = ptcross.build_hamiltonian(p)
    basis = ptcross.solve_metric_space(h)
    assert len(basis) == 4
    theta = ptcross.diagonal_metric(p)
    assert ptcross.signature(theta).positive_definite
    assert ptcross.constraint_residual(h, theta) < 1e-12
    hh = ptcross.hermitize(h, theta)
    assert np.allclose(hh, hh.conj().T, atol=1e-10)


def test_ep_location_with_python_path():
    ep = ptcross.find_ep_on_segment(lambda b: ptcross.ModelParams.from_AB(0.02, b), -0.02, 0.0, 1e-10)
    assert ep.parameter == pytest.approx(-0.005, abs=1e-6)


def test_classify_and_unfold():
    label = ptcross.classify_point(0.5, 0.5)
    assert label.crypto_hermitian
    assert label.named_region == ptcross.NamedRegion.D5
    report = ptcross.verify_unfolding(0.0, 1e-2, 20)
    assert report.fitted_linear_coefficient == pytest.approx(2.0, rel=1e-5)
    assert report.real_for_negative_gamma and report.real_for_positive_gamma


def test_run_and_errors():
    text = ptcross.run("ho", {"alpha": "1", "n-max": "3"})
    assert text.startswith("# tool: ptcross")
    with pytest.raises(ptcross.UsageError):
        ptcross.run("ho", {"alpha": "1", "bogus": "2"})
    with pytest.raises(ptcross.DomainError):
        ptcross.closed_form_theta(ptcross.ModelParams.from_couplings(-1.0, 0.2), [1, 0, 0, 0])
    assert ptcross.ho_crossing(3, 1, 2.0)
