"""
The ``varcalc`` module contains the variational calculus on the free
bicomplex: integration by parts into source forms, the first variation of a
Lagrangian with its Euler-Lagrange form and presymplectic potential, the
presymplectic current, the Helmholtz test for source forms and the
homotopy Lagrangian of a variational source form.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging
from collections import namedtuple

import sympy

from varbicolib.forms import (BiForm, Grading, d_h, d_v, require_grading)
from varbicolib.jetcore import (JetPoly, JetVar, MultiIndex, _sympify,
                                d_total_multi, jet_degree_parts,
                                jet_symbols)

logger = logging.getLogger(__name__)


class PreconditionError(ValueError):
    """Raised when the input of an operation violates its precondition."""


CheckResult = namedtuple('CheckResult', ['passed', 'witness'])
CheckResult.__doc__ = """Outcome of a test with the first counterexample found."""


class SourceForm(object):
    r"""
    Source form :math:`\sum_a f_a \, d_v u^a \wedge \nu`.

    Parameters
    ----------
    signature : Signature
    coeffs : dict or list
        Maps dependent-variable index (or name) to the coefficient
        :math:`f_a`. Missing entries are zero.

    Attributes
    ----------
    coeffs : tuple of JetPoly
        One coefficient per dependent variable.

    Notes
    -----
    As a :class:`BiForm` the source form is stored in canonical order
    :math:`\nu \wedge d_v u^a`, which differs from the source-form order by
    the sign :math:`(-1)^n`.

    """

    def __init__(self, signature, coeffs):
        self.signature = signature
        values = [JetPoly(signature, 0)] * signature.m
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        for a, value in items:
            values[signature.dep_index(a)] = JetPoly(signature, _sympify(value))
        self.coeffs = tuple(values)

    def __getitem__(self, a):
        return self.coeffs[self.signature.dep_index(a)]

    def __eq__(self, other):
        if not isinstance(other, SourceForm):
            return NotImplemented
        return (self.signature == other.signature and
                all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def __repr__(self):
        return f'SourceForm({[c.expr for c in self.coeffs]})'

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.coeffs)

    @classmethod
    def from_biform(cls, form):
        """
        Read a source form off a (n,1) form without higher-order generators.

        Raises
        ------
        GradingError
            If `form` is not homogeneous of bidegree (n,1).
        PreconditionError
            If a vertical generator of positive order occurs.

        """
        sig = form.signature
        require_grading(form, Grading(sig.n, 1), 'source form')
        sign = (-1) ** sig.n
        coeffs = {}
        for (_, (var,)), coeff in form.items():
            if var.order:
                raise PreconditionError(f'A source form has only order-zero vertical '
                                        f'generators, found one of order {var.order}')
            coeffs[var.dep] = sign * coeff
        return cls(sig, coeffs)

    def to_biform(self):
        sig = self.signature
        full = tuple(range(sig.n))
        sign = (-1) ** sig.n
        zero = MultiIndex.zero(sig.n)
        return BiForm(sig, {(full, (JetVar(a, zero),)): sign * c.expr
                            for a, c in enumerate(self.coeffs)})


class FirstVariation(object):
    r"""
    Euler-Lagrange form and presymplectic potential of a Lagrangian.

    The identity :math:`d_v L = EL - d_h \theta` is checked on
    construction.

    Parameters
    ----------
    lagrangian : BiForm
    el : SourceForm
    theta : BiForm

    Raises
    ------
    RuntimeError
        If the identity does not hold.

    """

    def __init__(self, lagrangian, el, theta):
        if d_v(lagrangian) != el.to_biform() - d_h(theta):
            raise RuntimeError('First variation identity dv L = EL - dh theta violated')
        self.lagrangian = lagrangian
        self.el = el
        self.theta = theta


def source_decompose(alpha):
    r"""
    Integrate a (n,1) form by parts into a source form.

    The highest-order vertical generator :math:`d_v u^a_{I+i}` (ties broken
    by the canonical jet order, i the first index present) is repeatedly
    replaced, moving :math:`P \nu \wedge d_v u^a_{I+i}` to
    :math:`-(D_i P) \nu \wedge d_v u^a_I` up to a horizontally exact term.

    Parameters
    ----------
    alpha : BiForm
        Homogeneous of bidegree (n,1).

    Returns
    -------
    source : SourceForm
    sigma : BiForm
        Bidegree (n-1,1), such that ``alpha == source.to_biform() - d_h(sigma)``.

    Raises
    ------
    GradingError
        If `alpha` is not homogeneous of bidegree (n,1).

    """
    sig = alpha.signature
    require_grading(alpha, Grading(sig.n, 1), 'form to integrate by parts')
    full = tuple(range(sig.n))
    remainder = alpha
    sigma = BiForm.zero(sig)
    steps = 0
    while True:
        candidates = [vgen[0] for _, vgen in remainder._terms if vgen[0].order]
        if not candidates:
            break
        var = max(candidates, key=lambda w: (w.order, w.key()))
        coeff = remainder._terms[(full, (var,))]
        i = next(k for k, c in enumerate(var.idx) if c)
        lower = JetVar(var.dep, var.idx.shift(i, -1))
        hminus = full[:i] + full[i + 1:]
        sign = d_h(BiForm(sig, {(hminus, (lower,)): 1}))._terms[(full, (var,))]
        beta = BiForm(sig, {(hminus, (lower,)): sign * coeff})
        remainder = remainder - d_h(beta)
        sigma = sigma - beta
        steps += 1
    logger.debug(f'Integrated by parts in {steps} steps')
    return SourceForm.from_biform(remainder), sigma


def euler_operator(lagrangian):
    r"""
    Euler-Lagrange expressions :math:`EL_a = \sum_I (-D)_I \partial L / \partial u^a_I`.

    Parameters
    ----------
    lagrangian : BiForm
        Homogeneous of bidegree (n,0).

    Returns
    -------
    SourceForm

    """
    sig = lagrangian.signature
    require_grading(lagrangian, Grading(sig.n, 0), 'Lagrangian')
    density = lagrangian.coefficient(tuple(range(sig.n)), ()).expr
    coeffs = [0] * sig.m
    for symbol in jet_symbols(sig, density):
        var = sig.jetvar(symbol)
        term = d_total_multi(sig, sympy.diff(density, symbol), var.idx)
        coeffs[var.dep] += (-1) ** var.order * term
    return SourceForm(sig, coeffs)


def first_variation(lagrangian):
    r"""
    First vertical variation :math:`d_v L = EL - d_h \theta`.

    Parameters
    ----------
    lagrangian : BiForm
        Homogeneous of bidegree (n,0).

    Returns
    -------
    FirstVariation
        `theta` has jet order at most 2k-1 for a Lagrangian of order k.

    Raises
    ------
    GradingError
        If `lagrangian` is not of bidegree (n,0).

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u_t = sig.symbol(sig.jet('u', 't'))
    >>> fv = first_variation(BiForm.volume(sig, u_t ** 2 / 2))
    >>> fv.el
    SourceForm([-u_t_t])

    """
    sig = lagrangian.signature
    require_grading(lagrangian, Grading(sig.n, 0), 'Lagrangian')
    el, sigma = source_decompose(d_v(lagrangian))
    return FirstVariation(lagrangian, el, sigma)


def presymplectic_current(lagrangian):
    r"""
    Presymplectic current :math:`\omega = d_v \theta` of a Lagrangian.

    Adding a boundary term :math:`d_h B` leaves :math:`\omega` unchanged for
    one independent variable. For more, the potential is only fixed up to a
    horizontally closed (n-1,1) form, and :math:`\omega` changes by a
    horizontally exact form.

    """
    return d_v(first_variation(lagrangian).theta)


def _adjoint_expansion(sig, coeff, idx):
    r"""
    Normal form of the operator :math:`(-1)^{|I|} D_I \circ (g \cdot)`.

    Returns a dict mapping multi-index K to the coefficient of D_K.
    """
    result = {}
    sign = (-1) ** idx.order
    for sub in idx.sub_indices():
        value = idx.binomial(sub) * d_total_multi(sig, coeff, idx.minus(sub))
        if value != 0:
            result[sub] = result.get(sub, 0) + sign * value
    return result


def linearization_adjoint_gap(source):
    r"""
    Difference between the linearization of a source form and its adjoint.

    The linearization is :math:`(D_f)_{ab} = \sum_I \partial f_a / \partial
    u^b_I \, D_I`, its formal adjoint :math:`(D_f^\dagger)_{ab} = \sum_I
    (-1)^{|I|} D_I \circ (\partial f_b / \partial u^a_I \cdot)`, both
    expanded in the normal form :math:`\sum_J c^J_{ab} D_J`.

    Parameters
    ----------
    source : SourceForm

    Returns
    -------
    dict
        Maps ``(a, b, J)`` to the non-zero JetPoly :math:`c^J_{ab}` of
        :math:`D_f - D_f^\dagger`. The source form satisfies the Helmholtz
        conditions iff the dict is empty.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t', 'x'], ['u'])
    >>> u_t, u_xx = sig.symbol(sig.jet('u', 't')), sig.symbol(sig.jet('u', 'x', 'x'))
    >>> gap = linearization_adjoint_gap(SourceForm(sig, [u_t - u_xx]))
    >>> gap[(0, 0, MultiIndex((1, 0)))]
    JetPoly(2)

    """
    sig = source.signature
    gap = {}

    def add(key, value):
        gap[key] = gap.get(key, 0) + value

    for a, f_a in enumerate(source.coeffs):
        for symbol in jet_symbols(sig, f_a.expr):
            var = sig.jetvar(symbol)
            derivative = sympy.diff(f_a.expr, symbol)
            add((a, var.dep, var.idx), derivative)
            # the same derivative enters the adjoint at (b, a)
            for sub, value in _adjoint_expansion(sig, derivative, var.idx).items():
                add((var.dep, a, sub), -value)
    result = {}
    for key in sorted(gap, key=lambda k: (k[0], k[1], k[2].key())):
        value = sympy.expand(gap[key])
        if value != 0:
            result[key] = JetPoly(sig, value)
    return result


def helmholtz_check(source):
    """
    Test a source form for the Helmholtz conditions.

    Returns
    -------
    CheckResult
        `witness` is the first non-zero entry ``((a, b, J), JetPoly)`` of
        :func:`linearization_adjoint_gap`, None when the test passes.

    """
    gap = linearization_adjoint_gap(source)
    if not gap:
        return CheckResult(True, None)
    witness = next(iter(gap.items()))
    logger.debug(f'Helmholtz conditions fail at {witness[0]}: {witness[1].expr}')
    return CheckResult(False, witness)


def vainberg_lagrangian(source):
    r"""
    Homotopy Lagrangian of a variational source form.

    .. math:: L = \sum_a u^a \int_0^1 f_a[t u] \, dt \; \nu

    Parameters
    ----------
    source : SourceForm
        Must pass :func:`helmholtz_check`.

    Returns
    -------
    BiForm
        Bidegree (n,0) with ``euler_operator(L) == source``.

    Raises
    ------
    PreconditionError
        If the Helmholtz conditions fail.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u = sig.symbol(sig.jet('u'))
    >>> vainberg_lagrangian(SourceForm(sig, [u]))
    BiForm(1/2*u^2 * dx(t))

    """
    sig = source.signature
    check = helmholtz_check(source)
    if not check.passed:
        (a, b, idx), value = check.witness
        raise PreconditionError(f'The source form is not variational: the '
                                f'linearization differs from its adjoint at '
                                f'({sig.dep[a]}, {sig.dep[b]}, {tuple(idx)})')
    zero = MultiIndex.zero(sig.n)
    density = 0
    for a, f_a in enumerate(source.coeffs):
        scaled = sum(part / (degree + 1)
                     for degree, part in jet_degree_parts(sig, f_a.expr).items())
        density += sig.symbol(JetVar(a, zero)) * scaled
    lagrangian = BiForm.volume(sig, density)
    if euler_operator(lagrangian) != source:
        raise RuntimeError('The homotopy Lagrangian does not reproduce its source form')
    return lagrangian


def is_null_lagrangian(lagrangian):
    """True iff the Euler-Lagrange expressions of `lagrangian` vanish."""
    return euler_operator(lagrangian).is_zero
