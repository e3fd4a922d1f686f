import pytest
import sympy

from varbicolib.jetcore import (JetPoly, JetVar, MultiIndex, Signature, jet_order,
                                partial, pullback_section, substitute, total_derivative)
from varbicolib.sampling import default_rng, random_poly, random_section

SIG = Signature(['t', 'x'], ['u', 'v'])
t, x = SIG.x(0), SIG.x(1)
u = SIG.symbol(SIG.jet('u'))
u_t = SIG.symbol(SIG.jet('u', 't'))
u_x = SIG.symbol(SIG.jet('u', 'x'))
u_tt = SIG.symbol(SIG.jet('u', 't', 't'))
u_tx = SIG.symbol(SIG.jet('u', 't', 'x'))


def test_signature():
    assert (SIG.n, SIG.m) == (2, 2)
    assert SIG.jet('v', 'x', 't') == JetVar(1, MultiIndex((1, 1)))
    assert SIG.jet('u', 't', 'x') == SIG.jet('u', 'x', 't')
    assert SIG.jetvar(u_tx) == SIG.jet('u', 't', 'x')
    assert SIG.jetvar(t) is None
    assert SIG.jetvar(sympy.Symbol('w')) is None


@pytest.mark.parametrize('indep, dep', [
    ([], ['u']),
    (['t'], ['t']),
    (['t'], ['dv']),
    (['t'], ['u_x']),
])
def test_signature_rejects_names(indep, dep):
    with pytest.raises(ValueError):
        Signature(indep, dep)


def test_unknown_variable_lists_names():
    with pytest.raises(KeyError, match='t, x'):
        SIG.jet('u', 'y')
    with pytest.raises(KeyError, match='u, v'):
        SIG.jet('w')


def test_multi_index():
    idx = MultiIndex((2, 1))
    assert idx.order == 3
    assert idx.indices() == [0, 0, 1]
    assert idx.minus(MultiIndex((1, 1))) == (1, 0)
    assert MultiIndex((1, 0)).lcm(MultiIndex((0, 2))) == (1, 2)
    assert len(list(idx.sub_indices())) == 6
    assert idx.binomial(MultiIndex((1, 0))) == 2
    with pytest.raises(ValueError):
        MultiIndex((1, 0)).minus(MultiIndex((0, 1)))


def test_canonical_jet_order():
    names = sorted([SIG.jet('u', 'x'), SIG.jet('v'), SIG.jet('u'), SIG.jet('u', 't')],
                   key=JetVar.key)
    assert names == [SIG.jet('u'), SIG.jet('u', 't'), SIG.jet('u', 'x'), SIG.jet('v')]


def test_total_derivative():
    p = JetPoly(SIG, u * u_t + x * u)
    assert total_derivative(p, 't') == JetPoly(SIG, u_t ** 2 + u * u_tt + x * u_t)
    assert total_derivative(p, 1) == JetPoly(SIG, u_x * u_t + u * u_tx + u + x * u_x)
    assert total_derivative(p, 't').order == p.order + 1


def test_total_derivatives_commute():
    p = JetPoly(SIG, u_t * u_x ** 2 + t * u)
    assert total_derivative(total_derivative(p, 't'), 'x') == \
        total_derivative(total_derivative(p, 'x'), 't')


def test_partial():
    p = JetPoly(SIG, t * u_t ** 2)
    assert partial(p, SIG.jet('u', 't')) == JetPoly(SIG, 2 * t * u_t)
    assert partial(p, 't') == JetPoly(SIG, u_t ** 2)
    assert partial(p, 'v').is_zero
    with pytest.raises(KeyError):
        partial(p, 'y')


def test_substitute():
    p = JetPoly(SIG, u_tt + u * u_t)
    result = substitute(p, {SIG.jet('u', 't', 't'): -u, SIG.jet('u', 't'): 1})
    assert result.is_zero


def test_pullback_section():
    p = JetPoly(SIG, u_t * u_x + SIG.symbol(SIG.jet('v')))
    section = {'u': t ** 2 * x, 'v': x}
    assert pullback_section(p, section) == JetPoly(SIG, 2 * t ** 3 * x + x)
    with pytest.raises(KeyError, match='v'):
        pullback_section(p, {'u': t})


def test_pullback_intertwines_total_derivative():
    rng = default_rng(2)
    for _ in range(50):
        p = random_poly(SIG, rng, order=2, degree=3)
        section = random_section(SIG, rng)
        for i in range(SIG.n):
            left = pullback_section(total_derivative(p, i), section)
            right = sympy.diff(pullback_section(p, section).expr, SIG.x(i))
            assert left == JetPoly(SIG, right)


def test_monomials_canonical_order():
    p = JetPoly(SIG, 3 * u - 1 + u_t ** 2)
    assert p.monomials() == [(1, ((u_t, 2),)), (3, ((u, 1),)), (-1, ())]
    assert JetPoly(SIG).monomials() == []


def test_arithmetic_and_equality():
    p = JetPoly(SIG, u)
    assert (p + 1) * (p - 1) == p ** 2 - 1
    assert 2 - p == -(p - 2)
    assert p != JetPoly(SIG, u_t)
    with pytest.raises(ValueError):
        p ** -1


def test_jet_order():
    assert jet_order(JetPoly(SIG, t ** 3)) == 0
    assert jet_order(JetPoly(SIG, u * u_tx)) == 2
