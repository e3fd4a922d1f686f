import pytest

from varbicolib import BiForm, Modelchain, OrthonomicSystem, Signature, descent, modelchain
from varbicolib.descent import IncompatibleCurrentError
from varbicolib.pdesys import IntegrabilityError, require_integrable

SIG = Signature(['t'], ['u'])
u, u_t, u_tt = (SIG.jet('u', *['t'] * k) for k in range(3))
OSC = OrthonomicSystem(SIG, [(u_tt, -SIG.symbol(u))])


def test_run_model():
    mc = Modelchain(OSC, BiForm(SIG, {((), (u_t, u)): 1})).run_model()
    assert mc.integrability.passed
    assert mc.report.compatible
    assert mc.lagrangian_hat.is_zero
    assert mc.result.lagrangian.order == 2
    assert mc.invariants() == {'first_variation': True, 'current': True,
                               'el_on_shell': True, 'omega_on_shell': True}


def test_invariants_need_run():
    with pytest.raises(RuntimeError):
        Modelchain(OSC, BiForm(SIG, {((), (u_t, u)): 1})).invariants()


def test_incompatible_current():
    mc = Modelchain(OSC, BiForm(SIG, {((), (u_t, u)): SIG.symbol(u_t)}))
    with pytest.raises(IncompatibleCurrentError):
        mc.run_model()
    assert mc.report is not None and not mc.report.compatible


def test_rejected_system():
    sig = Signature(['x', 'y'], ['u'])
    plain = sig.symbol(sig.jet('u'))
    bad = OrthonomicSystem(sig, [(sig.jet('u', 'x'), plain),
                                 (sig.jet('u', 'y'), sig.x(0) * plain)])
    omega = BiForm(sig, {((0,), (sig.jet('u'), sig.jet('u', 'y', 'y'))): 1})
    with pytest.raises(IntegrabilityError):
        Modelchain(bad, omega).run_model()


def test_integrability_checked_once(monkeypatch):
    calls = []

    def counting(system, depth):
        calls.append(depth)
        return require_integrable(system, depth)

    monkeypatch.setattr(modelchain, 'require_integrable', counting)
    monkeypatch.setattr(descent, 'require_integrable', counting)
    Modelchain(OSC, BiForm(SIG, {((), (u_t, u)): 1}), depth=2).run_model()
    assert calls == [2]
