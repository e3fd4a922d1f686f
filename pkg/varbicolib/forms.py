"""
The ``forms`` module contains the variational bicomplex: differential forms
on the jet bundle graded by horizontal and vertical degree, their wedge
product, the horizontal and vertical differentials and the homotopy that
inverts the vertical differential.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import itertools
import logging
from collections import namedtuple

import sympy

from varbicolib.jetcore import (JetPoly, JetVar, _sympify, d_total,
                                jet_degree_parts, jet_symbols)

logger = logging.getLogger(__name__)


class GradingError(ValueError):
    """Raised when a form has the wrong bidegree for an operation."""


class Grading(namedtuple('Grading', ['h', 'v'])):
    """Bidegree (horizontal degree, vertical degree) of a form."""

    __slots__ = ()

    def __str__(self):
        return f'({self.h},{self.v})'


def _sort_sign(keys):
    """Sign of the permutation sorting `keys`, 0 if a key repeats."""
    if len(set(keys)) != len(keys):
        return 0
    inversions = sum(1 for a, b in itertools.combinations(keys, 2) if a > b)
    return -1 if inversions % 2 else 1


def _canonical(hgen, vgen):
    sign = _sort_sign(hgen)
    if sign:
        sign *= _sort_sign([var.key() for var in vgen])
    if not sign:
        return 0, None
    return sign, (tuple(sorted(hgen)), tuple(sorted(vgen, key=JetVar.key)))


def term_key(key):
    """Canonical ordering of term keys ``(hgen, vgen)``."""
    hgen, vgen = key
    return (len(hgen), len(vgen), hgen, tuple(var.key() for var in vgen))


class BiForm(object):
    r"""
    Finite sum of terms :math:`c \, dx^H \wedge d_v u_{w_1} \wedge \dots`.

    Terms are stored canonically: the horizontal generators are sorted by
    independent-variable index, the vertical generators by the canonical jet
    order, and coefficients are expanded polynomials. Repeated generators
    and zero coefficients are dropped, so two forms are equal exactly when
    their term dictionaries agree.

    Parameters
    ----------
    signature : Signature
        Bundle the form lives on.
    terms : dict, optional
        Maps ``(hgen, vgen)`` to a coefficient. `hgen` is a tuple of
        independent-variable indices and `vgen` a tuple of
        :class:`JetVar`, both in any order; the permutation sign is applied
        on construction.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u, u_t = sig.jet('u'), sig.jet('u', 't')
    >>> BiForm(sig, {((), (u_t, u)): 1}) == -BiForm(sig, {((), (u, u_t)): 1})
    True

    """

    __slots__ = ('signature', '_terms')

    def __init__(self, signature, terms=None):
        self.signature = signature
        acc = {}
        for (hgen, vgen), coeff in (terms or {}).items():
            self._check_generators(hgen, vgen)
            sign, key = _canonical(tuple(hgen), tuple(vgen))
            if sign:
                acc[key] = acc.get(key, 0) + sign * _sympify(coeff)
        self._terms = {}
        for key, coeff in acc.items():
            coeff = sympy.expand(coeff)
            if coeff != 0:
                self._terms[key] = coeff

    def _check_generators(self, hgen, vgen):
        sig = self.signature
        if any(not 0 <= i < sig.n for i in hgen):
            raise KeyError(f'Horizontal generator out of range in {hgen}')
        for var in vgen:
            if not 0 <= var.dep < sig.m or len(var.idx) != sig.n:
                raise KeyError(f'{var} is not a jet variable of {sig}')

    @classmethod
    def zero(cls, signature):
        return cls(signature)

    @classmethod
    def scalar(cls, signature, coeff):
        """Form of bidegree (0,0)."""
        return cls(signature, {((), ()): coeff})

    @classmethod
    def dx(cls, signature, i):
        return cls(signature, {((signature.indep_index(i),), ()): 1})

    @classmethod
    def dv(cls, signature, var):
        return cls(signature, {((), (var,)): 1})

    @classmethod
    def volume(cls, signature, coeff=1):
        r"""The form :math:`c \, \nu = c \, dx^1 \wedge \dots \wedge dx^n`."""
        return cls(signature, {(tuple(range(signature.n)), ()): coeff})

    def terms(self):
        """
        Terms in canonical order.

        Returns
        -------
        list of (tuple, tuple, JetPoly)
            Horizontal generators, vertical generators and coefficient.

        """
        return [(h, v, JetPoly(self.signature, self._terms[(h, v)]))
                for h, v in sorted(self._terms, key=term_key)]

    def items(self):
        """Raw ``((hgen, vgen), sympy coefficient)`` pairs."""
        return self._terms.items()

    def coefficient(self, hgen, vgen):
        """Coefficient of a generator product, given in any order."""
        sign, key = _canonical(tuple(hgen), tuple(vgen))
        if not sign:
            return JetPoly(self.signature, 0)
        return JetPoly(self.signature, sign * self._terms.get(key, 0))

    @property
    def is_zero(self):
        return not self._terms

    def gradings(self):
        return {Grading(len(h), len(v)) for h, v in self._terms}

    @property
    def grading(self):
        """Bidegree of a homogeneous non-zero form, None otherwise."""
        gradings = self.gradings()
        return gradings.pop() if len(gradings) == 1 else None

    def is_homogeneous(self, grading):
        return all(g == tuple(grading) for g in self.gradings())

    def jetvars(self):
        """Jet variables occurring in coefficients or generators."""
        found = set()
        for (_, vgen), coeff in self._terms.items():
            found.update(vgen)
            found.update(self.signature.jetvar(s)
                         for s in jet_symbols(self.signature, coeff))
        return found

    @property
    def order(self):
        return max((var.order for var in self.jetvars()), default=0)

    def map_coefficients(self, func):
        """New form with `func` applied to every sympy coefficient."""
        return BiForm(self.signature, {key: func(c) for key, c in self._terms.items()})

    def _coerce_scalar(self, other):
        if isinstance(other, JetPoly):
            return other.expr
        if isinstance(other, (int, sympy.Expr)):
            return sympy.sympify(other)
        try:
            return _sympify(other)
        except (sympy.SympifyError, TypeError):
            return None

    def _check_same(self, other):
        if other.signature != self.signature:
            raise ValueError('Forms over different signatures')

    def __add__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        self._check_same(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            terms[key] = terms.get(key, 0) + coeff
        return BiForm(self.signature, terms)

    def __sub__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return BiForm(self.signature, {key: -c for key, c in self._terms.items()})

    def __mul__(self, other):
        scalar = self._coerce_scalar(other)
        if scalar is None:
            return NotImplemented
        return BiForm(self.signature, {key: scalar * c for key, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, BiForm):
            return self.signature == other.signature and self._terms == other._terms
        if other == 0:
            return self.is_zero
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        from varbicolib.render import render_text
        return f'BiForm({render_text(self)})'


def wedge(first, *others):
    r"""
    Wedge product :math:`\alpha \wedge \beta`.

    Commuting a vertical generator of the left factor past a horizontal
    generator of the right factor contributes a factor -1.

    Parameters
    ----------
    first, others : BiForm

    Returns
    -------
    BiForm

    """
    result = first
    for other in others:
        result._check_same(other)
        terms = {}
        for (h1, v1), c1 in result.items():
            for (h2, v2), c2 in other.items():
                sign = -1 if (len(v1) * len(h2)) % 2 else 1
                key = (h1 + h2, v1 + v2)
                terms[key] = terms.get(key, 0) + sign * c1 * c2
        result = BiForm(first.signature, terms)
    return result


def d_h(form):
    r"""
    Horizontal differential :math:`d_h`, raising the horizontal degree.

    On a term :math:`c \, dx^H \wedge d_v u_{w_1} \wedge \dots \wedge d_v u_{w_v}`

    .. math:: d_h = \sum_i D_i c \, dx^i \wedge dx^H \wedge \dots
              + (-1)^{|H|} c \sum_i \sum_k dx^H \wedge dx^i \wedge
              \dots d_v u_{w_k + i} \dots

    Returns
    -------
    BiForm
        Satisfies ``d_h(d_h(a)) == 0``.

    """
    sig = form.signature
    terms = {}

    def add(key, value):
        terms[key] = terms.get(key, 0) + value

    for (hgen, vgen), coeff in form.items():
        sign = -1 if len(hgen) % 2 else 1
        for i in range(sig.n):
            if i in hgen:
                continue
            dc = d_total(sig, coeff, i)
            if dc != 0:
                add(((i,) + hgen, vgen), dc)
            for k, var in enumerate(vgen):
                add((hgen + (i,), vgen[:k] + (var.shift(i),) + vgen[k + 1:]), sign * coeff)
    return BiForm(sig, terms)


def d_v(form):
    r"""
    Vertical differential :math:`d_v`, raising the vertical degree.

    .. math:: d_v (c \, dx^H \wedge V) = (-1)^{|H|} \sum_{a,I}
              \frac{\partial c}{\partial u^a_I} dx^H \wedge d_v u^a_I \wedge V

    """
    sig = form.signature
    terms = {}
    for (hgen, vgen), coeff in form.items():
        sign = -1 if len(hgen) % 2 else 1
        for symbol in jet_symbols(sig, coeff):
            key = (hgen, (sig.jetvar(symbol),) + vgen)
            terms[key] = terms.get(key, 0) + sign * sympy.diff(coeff, symbol)
    return BiForm(sig, terms)


def vertical_homotopy(form):
    r"""
    Homotopy operator :math:`h_v` for the vertical differential.

    Contracts with the radial vertical field and integrates along the
    scaling :math:`u^a_I \mapsto t u^a_I`. A monomial of jet degree q on a
    term of vertical degree v is weighted by 1/(v+q), and the contraction
    with the k-th vertical generator carries the sign :math:`(-1)^{|H|+k}`.

    Parameters
    ----------
    form : BiForm
        Every term must have vertical degree at least 1.

    Returns
    -------
    BiForm
        Satisfies ``d_v(h) + h(d_v) == identity`` on forms of vertical
        degree at least 1.

    Raises
    ------
    GradingError
        If a term of vertical degree 0 is present.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u = sig.jet('u')
    >>> vertical_homotopy(BiForm(sig, {((), (u,)): sig.symbol(u)}))
    BiForm(1/2*u^2)

    """
    sig = form.signature
    terms = {}
    for (hgen, vgen), coeff in form.items():
        if not vgen:
            raise GradingError('The vertical homotopy needs vertical degree >= 1, '
                               f'got a term of bidegree ({len(hgen)},0)')
        hsign = -1 if len(hgen) % 2 else 1
        for degree, part in jet_degree_parts(sig, coeff).items():
            scaled = part / (len(vgen) + degree)
            for k, var in enumerate(vgen):
                key = (hgen, vgen[:k] + vgen[k + 1:])
                value = hsign * (-1) ** k * sig.symbol(var) * scaled
                terms[key] = terms.get(key, 0) + value
    return BiForm(sig, terms)


def homogeneous_part(form, grading):
    """Terms of `form` of the given bidegree."""
    grading = Grading(*grading)
    return BiForm(form.signature, {key: c for key, c in form.items()
                                   if (len(key[0]), len(key[1])) == grading})


def require_grading(form, grading, what='form'):
    """Raise GradingError unless `form` is homogeneous of `grading`."""
    grading = Grading(*grading)
    if not form.is_homogeneous(grading):
        found = ', '.join(str(g) for g in sorted(form.gradings()))
        raise GradingError(f'The {what} must have bidegree {grading}, got {found}')
