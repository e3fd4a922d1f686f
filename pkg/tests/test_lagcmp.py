import pytest

from varbicolib.forms import BiForm, d_h
from varbicolib.jetcore import JetPoly, Signature
from varbicolib.lagcmp import contains, equivalent_mod_boundary, solve_dh_exact
from varbicolib.descent import reconstruct
from varbicolib.pdesys import IntegrabilityError, OrthonomicSystem, onshell_dh, reduce
from varbicolib.varcalc import (PreconditionError, euler_operator, helmholtz_check,
                                is_null_lagrangian, presymplectic_current)

SIG = Signature(['t'], ['q1', 'q2', 'lam'])
q1, q2, lam = (SIG.symbol(SIG.jet(name)) for name in SIG.dep)
q1_t, q2_t = SIG.symbol(SIG.jet('q1', 't')), SIG.symbol(SIG.jet('q2', 't'))
L = BiForm.volume(SIG, (q1_t ** 2 + q2_t ** 2) / 2 + lam * (q1 - q2))
EL = OrthonomicSystem(SIG, [(SIG.jet('q1', 't', 't'), 0), (SIG.jet('q2'), q1),
                            (SIG.jet('lam'), 0)])

WSIG = Signature(['t', 'x'], ['u'])
u, u_t, u_x = WSIG.jet('u'), WSIG.jet('u', 't'), WSIG.jet('u', 'x')
WAVE = OrthonomicSystem(WSIG, [(WSIG.jet('u', 't', 't'),
                                WSIG.symbol(WSIG.jet('u', 'x', 'x')))])


def test_multiplier_shift_is_contained():
    other = L + BiForm.volume(SIG, lam * (q1 - q2))
    verdict = contains(L, other, EL)
    assert verdict.el_contained.passed
    assert verdict.omega_match == 'exact'
    assert verdict.holds
    assert contains(other, L, EL).holds


def test_constant_shift_is_not_contained():
    other = L + BiForm.volume(SIG, q1 - q2)
    verdict = contains(L, other, EL)
    assert not verdict.el_contained.passed
    assert verdict.el_contained.witness == (0, JetPoly(SIG, 1))
    assert verdict.omega_match == 'exact'
    assert not verdict.holds


def test_system_must_contain_euler_lagrange_equations():
    sys = OrthonomicSystem(SIG, [(SIG.jet('q2'), q1), (SIG.jet('lam'), 0)])
    with pytest.raises(PreconditionError, match='q1'):
        contains(L, L, sys)


def test_rejected_system():
    sig = Signature(['x', 'y'], ['u'])
    plain = sig.symbol(sig.jet('u'))
    bad = OrthonomicSystem(sig, [(sig.jet('u', 'x'), plain),
                                 (sig.jet('u', 'y'), sig.x(0) * plain)])
    with pytest.raises(IntegrabilityError):
        contains(BiForm.volume(sig, plain), BiForm.volume(sig, plain), bad)


def test_scaled_lagrangian_mismatch():
    sig = Signature(['t'], ['u'])
    s, st = sig.symbol(sig.jet('u')), sig.symbol(sig.jet('u', 't'))
    osc = OrthonomicSystem(sig, [(sig.jet('u', 't', 't'), -s)])
    lag = BiForm.volume(sig, (st ** 2 - s ** 2) / 2)
    verdict = contains(lag, 3 * lag, osc)
    assert verdict.el_contained.passed
    assert verdict.omega_match == 'mismatch'
    assert verdict.delta == BiForm(sig, {((), (sig.jet('u'), sig.jet('u', 't'))): 2})


def test_equivalent_mod_boundary():
    sigma = BiForm.scalar(SIG, q1 * q1_t)
    assert equivalent_mod_boundary(L, L + d_h(sigma))
    assert not equivalent_mod_boundary(L, 2 * L)


def test_solve_dh_exact():
    pi = BiForm(WSIG, {((), (u, u_x)): 1})
    delta = onshell_dh(pi, WAVE)
    found = solve_dh_exact(delta, WAVE, bounds=(1, 0))
    assert found is not None
    assert onshell_dh(found, WAVE) == delta
    assert solve_dh_exact(BiForm.zero(WSIG), WAVE).is_zero


def test_solve_dh_exact_outside_bounds():
    delta = onshell_dh(BiForm(WSIG, {((), (u, u_x)): 1}), WAVE)
    assert solve_dh_exact(delta, WAVE, bounds=(0, 0)) is None


def test_solve_dh_exact_preconditions():
    sig = Signature(['t'], ['u'])
    osc = OrthonomicSystem(sig, [(sig.jet('u', 't', 't'), -sig.symbol(sig.jet('u')))])
    with pytest.raises(PreconditionError):
        solve_dh_exact(BiForm(sig, {((), (sig.jet('u'), sig.jet('u', 't'))): 1}), osc)
    off_shell = BiForm(WSIG, {((0,), (u, WSIG.jet('u', 't', 't'))): 1})
    with pytest.raises(PreconditionError):
        solve_dh_exact(off_shell, WAVE)


swt, swx = WSIG.symbol(u_t), WSIG.symbol(u_x)
swtt, swxx = WSIG.symbol(WSIG.jet('u', 't', 't')), WSIG.symbol(WSIG.jet('u', 'x', 'x'))
LW = BiForm.volume(WSIG, (swt ** 2 - swx ** 2) / 2)
# differs from LW by the total x-derivative of -u_t^2/2
LW_SHIFTED = LW - BiForm.volume(WSIG, swt * WSIG.symbol(WSIG.jet('u', 't', 'x')))


def test_constrained_current():
    assert presymplectic_current(L) == BiForm(SIG, {
        ((), (SIG.jet('q1', 't'), SIG.jet('q1'))): 1,
        ((), (SIG.jet('q2', 't'), SIG.jet('q2'))): 1})
    other = L + BiForm.volume(SIG, lam * (q1 - q2))
    assert not is_null_lagrangian(other - L)
    assert not equivalent_mod_boundary(L, other)


def test_containment_is_reflexive():
    verdict = contains(LW, LW, WAVE)
    assert verdict.omega_match == 'exact'
    assert verdict.holds


def test_current_differs_by_exact_form():
    assert equivalent_mod_boundary(LW, LW_SHIFTED)
    verdict = contains(LW, LW_SHIFTED, WAVE)
    assert verdict.el_contained.passed
    assert verdict.omega_match == 'exact_up_to_dh'
    assert not verdict.delta.is_zero
    assert onshell_dh(verdict.pi, WAVE) == verdict.delta
    assert verdict.holds
    assert contains(LW_SHIFTED, LW, WAVE).holds


def test_current_difference_outside_bounds():
    verdict = contains(LW, LW_SHIFTED, WAVE, bounds=(0, 0))
    assert verdict.el_contained.passed
    assert verdict.omega_match == 'undecided_within_bounds'
    assert verdict.pi is None
    assert not verdict.holds


def test_boundary_equivalent_contain_each_other():
    sigma = BiForm.scalar(SIG, q1 * q1_t + lam * q2)
    other = L + d_h(sigma)
    assert contains(L, other, EL).holds
    assert contains(other, L, EL).holds


def test_containment_is_transitive():
    equation = swtt - swxx
    chain = [LW, LW_SHIFTED, LW_SHIFTED + BiForm.volume(WSIG, equation ** 2)]
    for lagrangian, other in zip(chain, chain[1:]):
        assert contains(lagrangian, other, WAVE).holds
    assert contains(chain[0], chain[2], WAVE).holds


def test_containing_lagrangians_share_the_current():
    omega = BiForm(WSIG, {((0,), (u, u_x)): -1, ((1,), (u, u_t)): -1})
    reconstructed = reconstruct(omega, WAVE).lagrangian
    verdict = contains(reconstructed, LW_SHIFTED, WAVE)
    assert verdict.holds
    el = euler_operator(LW_SHIFTED)
    assert helmholtz_check(el).passed
    assert all(reduce(c, WAVE).normal.is_zero for c in el.coeffs)
    expected = omega if verdict.pi is None else omega - onshell_dh(verdict.pi, WAVE)
    assert reduce(presymplectic_current(LW_SHIFTED), WAVE).normal == expected


def test_uncoupled_fields_are_not_contained():
    sig = Signature(['t'], ['u', 'v'])
    su, sv = sig.symbol(sig.jet('u')), sig.symbol(sig.jet('v'))
    sut, svt = sig.symbol(sig.jet('u', 't')), sig.symbol(sig.jet('v', 't'))
    single = BiForm.volume(sig, (sut ** 2 - su ** 2) / 2)
    both = single + BiForm.volume(sig, (svt ** 2 - sv ** 2) / 2)
    system = OrthonomicSystem(sig, [(sig.jet('u', 't', 't'), -su)])
    verdict = contains(single, both, system)
    assert not verdict.el_contained.passed
    svtt = sig.symbol(sig.jet('v', 't', 't'))
    assert verdict.el_contained.witness == (1, JetPoly(sig, -sv - svtt))
    assert verdict.omega_match == 'mismatch'
    assert not verdict.holds
