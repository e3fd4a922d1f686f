import pytest

from varbicolib.forms import BiForm, GradingError, d_h, d_v
from varbicolib.jetcore import JetPoly, MultiIndex, Signature, total_derivative
from varbicolib.sampling import default_rng, random_form, random_lagrangian
from varbicolib.varcalc import (PreconditionError, SourceForm, euler_operator,
                                first_variation, helmholtz_check, is_null_lagrangian,
                                linearization_adjoint_gap, presymplectic_current,
                                source_decompose, vainberg_lagrangian)

OSC = Signature(['t'], ['u'])
u, u_t, u_tt = (OSC.symbol(OSC.jet('u', *i)) for i in [(), ('t',), ('t', 't')])

SIG = Signature(['t', 'x'], ['u', 'v'])
WAVE = Signature(['t', 'x'], ['u'])


def test_first_variation_oscillator():
    fv = first_variation(BiForm.volume(OSC, (u_t ** 2 - u ** 2) / 2))
    assert fv.el == SourceForm(OSC, [-u - u_tt])
    assert fv.theta == BiForm(OSC, {((), (OSC.jet('u'),)): u_t})
    assert presymplectic_current(fv.lagrangian) == BiForm(
        OSC, {((), (OSC.jet('u', 't'), OSC.jet('u'))): 1})


def test_first_variation_needs_lagrangian():
    with pytest.raises(GradingError):
        first_variation(BiForm.dv(OSC, OSC.jet('u')))


@pytest.mark.parametrize('seed', range(50))
def test_euler_operator_agrees_with_first_variation(seed):
    order = 1 + seed % 2
    lagrangian = random_lagrangian(SIG, default_rng(seed), order=order, degree=3)
    fv = first_variation(lagrangian)
    assert fv.el == euler_operator(lagrangian)
    assert d_v(lagrangian) == fv.el.to_biform() - d_h(fv.theta)
    assert fv.theta.order <= 2 * order - 1


@pytest.mark.parametrize('seed', range(20))
def test_source_decompose(seed):
    alpha = random_form(SIG, default_rng(100 + seed), (2, 1), order=3, degree=2)
    source, sigma = source_decompose(alpha)
    assert alpha == source.to_biform() - d_h(sigma)
    assert all(var.order == 0 for _, vgen, _ in source.to_biform().terms() for var in vgen)


def test_source_form_sign():
    source = SourceForm(WAVE, {'u': 1})
    assert source.to_biform() == BiForm(WAVE, {((0, 1), (WAVE.jet('u'),)): 1})
    one_dim = SourceForm(OSC, [1])
    assert one_dim.to_biform() == BiForm(OSC, {((0,), (OSC.jet('u'),)): -1})
    assert SourceForm.from_biform(one_dim.to_biform()) == one_dim


def test_source_form_rejects_higher_generators():
    with pytest.raises(PreconditionError):
        SourceForm.from_biform(BiForm(OSC, {((0,), (OSC.jet('u', 't'),)): 1}))
    with pytest.raises(GradingError):
        SourceForm.from_biform(BiForm.dv(OSC, OSC.jet('u')))


def test_null_lagrangian():
    w = JetPoly(WAVE, WAVE.symbol(WAVE.jet('u')) * WAVE.symbol(WAVE.jet('u', 'x')))
    divergence = total_derivative(w, 't')
    assert is_null_lagrangian(BiForm.volume(WAVE, divergence))
    assert not is_null_lagrangian(BiForm.volume(OSC, u_t ** 2))


def test_helmholtz_heat_fails():
    ut = WAVE.symbol(WAVE.jet('u', 't'))
    uxx = WAVE.symbol(WAVE.jet('u', 'x', 'x'))
    heat = SourceForm(WAVE, [ut - uxx])
    check = helmholtz_check(heat)
    assert not check.passed
    assert check.witness == ((0, 0, MultiIndex((1, 0))), JetPoly(WAVE, 2))
    assert list(linearization_adjoint_gap(heat)) == [(0, 0, MultiIndex((1, 0)))]
    with pytest.raises(PreconditionError):
        vainberg_lagrangian(heat)


@pytest.mark.parametrize('seed', range(50))
def test_euler_lagrange_forms_are_variational(seed):
    order = 1 + seed % 2
    lagrangian = random_lagrangian(SIG, default_rng(200 + seed), order=order,
                                   degree=4 - order, terms=3)
    source = euler_operator(lagrangian)
    assert helmholtz_check(source).passed
    recovered = vainberg_lagrangian(source)
    assert euler_operator(recovered) == source
    assert is_null_lagrangian(recovered - lagrangian)


@pytest.mark.parametrize('seed', range(50))
def test_boundary_terms_have_no_euler_lagrange_form(seed):
    boundary = random_form(SIG, default_rng(400 + seed), (1, 0), order=2, degree=3)
    assert euler_operator(d_h(boundary)).is_zero


@pytest.mark.parametrize('seed', range(30))
def test_boundary_term_and_current(seed):
    sig = OSC if seed % 2 else SIG
    rng = default_rng(500 + seed)
    lagrangian = random_lagrangian(sig, rng, order=1, degree=3)
    boundary = random_form(sig, rng, (sig.n - 1, 0), order=1, degree=2)
    shifted = lagrangian + d_h(boundary)
    theta = first_variation(lagrangian).theta
    assert d_h(first_variation(shifted).theta - theta) == -d_v(d_h(boundary))
    difference = presymplectic_current(shifted) - presymplectic_current(lagrangian)
    if sig.n == 1:
        assert difference.is_zero
    else:
        # the potential is fixed up to a horizontally closed form
        assert d_h(difference).is_zero


def test_vainberg_oscillator():
    lagrangian = vainberg_lagrangian(SourceForm(OSC, [u_tt + u]))
    assert lagrangian == BiForm.volume(OSC, (u ** 2 + u * u_tt) / 2)


def test_coupled_source_gap():
    # f = (v, 0) is not variational: the (u, v) entry has no partner
    v = SIG.symbol(SIG.jet('v'))
    gap = linearization_adjoint_gap(SourceForm(SIG, {'u': v}))
    assert gap == {(0, 1, MultiIndex((0, 0))): JetPoly(SIG, 1),
                   (1, 0, MultiIndex((0, 0))): JetPoly(SIG, -1)}
