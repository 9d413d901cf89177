import json
import math

import pytest

import poafd


def test_kernel_reproduces_point_values():
    a, b = 0.3 + 0.2j, -0.5j
    value = poafd.hk_inner(poafd.szego(a), poafd.szego(b))
    assert value == pytest.approx(1 / (1 - a.conjugate() * b), abs=1e-12)


def test_derivative_kernel_coefficients():
    assert poafd.szego(0.5, order=1, degree=5)[:6] == pytest.approx([0, 1, 1, 0.75, 0.5, 0.3125])


def test_single_atom_is_recovered_in_one_step():
    f = poafd.szego(0.4 - 0.3j)
    result = poafd.expand(f, poafd.Config(max_terms=4))
    assert len(result) >= 1
    q, order = result.params[0]
    assert abs(q - (0.4 - 0.3j)) < 1e-3
    assert order == 0
    assert result.residual_norms[1] <= 1e-3 * result.residual_norms[0]


def test_residuals_do_not_increase():
    f = [1.0, 0.5j, -0.25, 0.125]
    result = poafd.expand(f, poafd.Config(max_terms=8, grid_radial=16, grid_angular=32))
    norms = result.residual_norms
    assert all(b <= a + 1e-12 for a, b in zip(norms, norms[1:]))
    assert norms[0] == pytest.approx(math.sqrt(1 + 0.25 + 0.0625 + 0.015625))


def test_weak_mode_meets_threshold():
    f = poafd.szego(0.2)
    cfg = poafd.Config(mode="weak", rho=0.5, max_terms=3, grid_radial=16, grid_angular=32)
    result = poafd.expand(f, cfg)
    for accepted, sup in zip(result.objective_trace, result.supremum_trace):
        assert accepted >= 0.5 * sup


def test_inversion_of_constant():
    inv = poafd.invert([1.0], poafd.Config(max_terms=2))
    recovered = poafd.apply_L(inv.inverse)
    assert recovered[0] == pytest.approx(1.0, abs=1e-10)
    assert max(abs(c) for c in recovered[1:]) < 1e-10


def test_pseudo_inverse_reports_defect():
    # boundary function z^{-1} + 1 of degree 1: defect is the norm of the negative part
    g = [1.0, 1.0, 0.0]
    result = poafd.pseudo_invert(g, poafd.Config(max_terms=4, grid_radial=16, grid_angular=32))
    assert result.defect == pytest.approx(1.0)
    assert result.projection[0] == pytest.approx(1.0)


def test_basis_method_condition():
    kappa = poafd.transfer_condition([0.0, 0.5])
    assert kappa == pytest.approx(2 + math.sqrt(3), rel=1e-9)


def test_degenerate_plan_raises():
    with pytest.raises(poafd.PoafdError):
        poafd.basis_expand(poafd.szego(0.1), [0.2, 0.2])


def test_invalid_config_raises():
    with pytest.raises(poafd.PoafdError):
        poafd.Config(mode="weak", rho=1.5)


def test_verify_passes():
    report = poafd.verify(trials=5)
    assert report["passed"], report


def test_cli_round_trip():
    code, out, err = poafd.run_cli(["basis", "--help"])
    assert code == 0
    assert "exit" in out.lower()
    code, out, err = poafd.run_cli(["expand", "--mode", "bogus"])
    assert code != 0
    assert json.loads(err)["exit_code"] == code
