"""
The ``jetcore`` module contains the coordinates of the infinite jet bundle
(independent variables, multi-indices and jet variables) and the exact
polynomial arithmetic on them: partial and total derivatives, substitution
and the pullback along polynomial sections.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import itertools
import logging
import re
from collections import defaultdict, namedtuple
from fractions import Fraction
from math import comb, prod

import sympy

logger = logging.getLogger(__name__)

#: Words of the session language, unavailable as variable names.
RESERVED = ('bundle', 'def', 'sys', 'cmd', 'jet', 'dx', 'dv', 'lag', 'form',
            'src', 'el', 'theta', 'omega', 'helmholtz', 'vainberg', 'reduce',
            'checkomega', 'reconstruct', 'compare')

_NAME = re.compile(r'[A-Za-z][A-Za-z0-9]*\Z')


class Signature(object):
    r"""
    Independent and dependent variables of a trivial vector bundle.

    Parameters
    ----------
    indep : list of str
        Names of the independent variables :math:`x^1, \dots, x^n`.
    dep : list of str
        Names of the dependent variables :math:`u^1, \dots, u^m`.

    Attributes
    ----------
    indep : tuple of str
        Names of the independent variables.
    dep : tuple of str
        Names of the dependent variables.

    Examples
    --------
    >>> sig = Signature(['t', 'x'], ['u'])
    >>> sig.n, sig.m
    (2, 1)
    >>> sig.symbol(sig.jet('u', 't', 'x'))
    u_t_x

    """

    def __init__(self, indep, dep):
        self.indep = tuple(indep)
        self.dep = tuple(dep)
        if not self.indep or not self.dep:
            raise ValueError('A signature needs at least one independent and '
                             'one dependent variable')
        names = self.indep + self.dep
        for name in names:
            if not _NAME.match(name) or name in RESERVED:
                raise ValueError(f'{name!r} is not a valid variable name')
        if len(set(names)) != len(names):
            raise ValueError(f'Variable names must be unique: {", ".join(names)}')

        self._x = tuple(sympy.Symbol(name) for name in self.indep)
        self._symbols = {}

    @property
    def n(self):
        return len(self.indep)

    @property
    def m(self):
        return len(self.dep)

    def __eq__(self, other):
        return (isinstance(other, Signature) and
                (self.indep, self.dep) == (other.indep, other.dep))

    def __hash__(self):
        return hash((self.indep, self.dep))

    def __repr__(self):
        return f'Signature({list(self.indep)}, {list(self.dep)})'

    def x(self, i):
        """Symbol of the `i`-th independent variable."""
        return self._x[i]

    def indep_index(self, name):
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise KeyError(f'Independent variable index {name} out of range')
            return name
        try:
            return self.indep.index(name)
        except ValueError:
            raise KeyError(f"Independent variable {name} is not in the signature "
                           f"({', '.join(self.indep)})")

    def dep_index(self, name):
        if isinstance(name, int):
            if not 0 <= name < self.m:
                raise KeyError(f'Dependent variable index {name} out of range')
            return name
        try:
            return self.dep.index(name)
        except ValueError:
            raise KeyError(f"Dependent variable {name} is not in the signature "
                           f"({', '.join(self.dep)})")

    def jet(self, dep, *indep):
        """
        Jet variable of `dep` differentiated once by each name in `indep`.

        >>> Signature(['t', 'x'], ['u']).jet('u', 't', 't')
        JetVar(dep=0, idx=(2, 0))

        """
        idx = MultiIndex.from_indices(self.n, [self.indep_index(i) for i in indep])
        return JetVar(self.dep_index(dep), idx)

    def symbol(self, var):
        """Sympy symbol standing for the jet variable `var`."""
        try:
            return self._symbols[var]
        except KeyError:
            pass
        if not 0 <= var.dep < self.m or len(var.idx) != self.n:
            raise KeyError(f'{var} does not belong to {self}')
        names = [self.dep[var.dep]] + [self.indep[i] for i in var.idx.indices()]
        symbol = sympy.Symbol('_'.join(names))
        self._symbols[var] = symbol
        return symbol

    def jetvar(self, symbol):
        """Jet variable named by `symbol`, None for any other symbol."""
        if type(symbol) is not sympy.Symbol:
            return None
        dep, *indep = symbol.name.split('_')
        if dep not in self.dep or any(i not in self.indep for i in indep):
            return None
        return self.jet(dep, *indep)

    def variable_key(self, symbol):
        """Canonical ordering of symbols: independent variables, jets, others."""
        if symbol in self._x:
            return (0, self._x.index(symbol))
        var = self.jetvar(symbol)
        if var is not None:
            return (1,) + var.key()
        return (2, str(symbol))


class MultiIndex(tuple):
    r"""
    Symmetric multi-index stored as the multiplicities of each independent
    variable, so that :math:`\partial_t \partial_x = \partial_x \partial_t`
    holds by construction.

    >>> MultiIndex((2, 1)).order
    3

    """

    def __new__(cls, counts):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise ValueError(f'Negative multiplicity in multi-index {counts}')
        return super().__new__(cls, counts)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def from_indices(cls, n, indices):
        counts = [0] * n
        for i in indices:
            counts[i] += 1
        return cls(counts)

    @property
    def order(self):
        return sum(self)

    def indices(self):
        """Expanded list of independent-variable indices, sorted."""
        return [i for i, c in enumerate(self) for _ in range(c)]

    def shift(self, i, k=1):
        counts = list(self)
        counts[i] += k
        return MultiIndex(counts)

    def plus(self, other):
        return MultiIndex(a + b for a, b in zip(self, other))

    def minus(self, other):
        if not other.divides(self):
            raise ValueError(f'{other} does not divide {self}')
        return MultiIndex(a - b for a, b in zip(self, other))

    def divides(self, other):
        return all(a <= b for a, b in zip(self, other))

    def lcm(self, other):
        return MultiIndex(max(a, b) for a, b in zip(self, other))

    def sub_indices(self):
        """All multi-indices K with K <= self."""
        for counts in itertools.product(*(range(c + 1) for c in self)):
            yield MultiIndex(counts)

    def binomial(self, other):
        """Multinomial coefficient C(self, other) of the Leibniz rule."""
        return prod(comb(a, b) for a, b in zip(self, other))

    def key(self):
        """Graded order, earlier variables first at equal order."""
        return (self.order, tuple(-c for c in self))


class JetVar(namedtuple('JetVar', ['dep', 'idx'])):
    """Jet coordinate :math:`u^a_I` as (dependent index, multi-index)."""

    __slots__ = ()

    @property
    def order(self):
        return self.idx.order

    def shift(self, i, k=1):
        return JetVar(self.dep, self.idx.shift(i, k))

    def divides(self, other):
        return self.dep == other.dep and self.idx.divides(other.idx)

    def key(self):
        return (self.dep,) + self.idx.key()


def _sympify(value):
    if isinstance(value, JetPoly):
        return value.expr
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


def jet_symbols(signature, expr):
    """Free symbols of `expr` that are jet variables of `signature`."""
    return [s for s in expr.free_symbols if signature.jetvar(s) is not None]


def d_total(signature, expr, i):
    r"""
    Total derivative :math:`D_i` of a sympy polynomial `expr`.

    .. math:: D_i p = \partial_i p + \sum_{a,I} u^a_{I+i} \partial p / \partial u^a_I

    """
    result = sympy.diff(expr, signature.x(i))
    for symbol in jet_symbols(signature, expr):
        var = signature.jetvar(symbol)
        result += sympy.diff(expr, symbol) * signature.symbol(var.shift(i))
    return sympy.expand(result)


def d_total_multi(signature, expr, idx):
    """Iterated total derivative :math:`D_I`."""
    for i in idx.indices():
        if expr == 0:
            break
        expr = d_total(signature, expr, i)
    return expr


def jet_degree_parts(signature, expr):
    """
    Split `expr` into components that are homogeneous in the jet variables.

    Returns
    -------
    dict
        Maps the jet degree q to the component of that degree. Independent
        variables and other symbols count as constants.

    """
    expr = sympy.expand(expr)
    if expr == 0:
        return {}
    symbols = sorted(jet_symbols(signature, expr), key=signature.variable_key)
    if not symbols:
        return {0: expr}
    parts = defaultdict(int)
    for monom, coeff in sympy.Poly(expr, *symbols).terms():
        parts[sum(monom)] += coeff * prod(s ** e for s, e in zip(symbols, monom))
    return dict(parts)


class JetPoly(object):
    r"""
    Exact polynomial in the independent variables and jet variables.

    The polynomial is kept as an expanded sympy expression with rational
    coefficients, which is its canonical form.

    Parameters
    ----------
    signature : Signature
        Bundle the polynomial lives on.
    expr : sympy expression, int, Fraction or JetPoly
        Value of the polynomial. Default: 0.

    Examples
    --------
    >>> sig = Signature(['t'], ['u'])
    >>> p = JetPoly(sig, sig.symbol(sig.jet('u', 't'))) ** 2
    >>> p.order
    1

    """

    __slots__ = ('signature', 'expr')

    def __init__(self, signature, expr=0):
        self.signature = signature
        self.expr = sympy.expand(_sympify(expr))

    def _coerce(self, other):
        if isinstance(other, JetPoly):
            if other.signature != self.signature:
                raise ValueError('Polynomials over different signatures')
            return other.expr
        if isinstance(other, (int, Fraction, sympy.Expr)):
            return _sympify(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return JetPoly(self.signature, self.expr + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return JetPoly(self.signature, self.expr - other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return JetPoly(self.signature, other - self.expr)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return JetPoly(self.signature, self.expr * other)

    __rmul__ = __mul__

    def __neg__(self):
        return JetPoly(self.signature, -self.expr)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError('Only non-negative integer powers are polynomial')
        return JetPoly(self.signature, self.expr ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return sympy.expand(self.expr - other) == 0

    def __hash__(self):
        return hash(self.expr)

    def __repr__(self):
        return f'JetPoly({self.expr})'

    @property
    def is_zero(self):
        return self.expr == 0

    def jetvars(self):
        """Set of jet variables occurring in the polynomial."""
        return {self.signature.jetvar(s) for s in jet_symbols(self.signature, self.expr)}

    @property
    def order(self):
        return jet_order(self)

    def monomials(self):
        """
        Monomials in canonical order.

        Returns
        -------
        list of (sympy.Rational, tuple)
            Coefficient and the ``(symbol, exponent)`` pairs of each monomial,
            sorted in graded lexicographic order (highest first) over the
            variables in :meth:`Signature.variable_key` order.

        """
        if self.expr == 0:
            return []
        symbols = sorted(self.expr.free_symbols, key=self.signature.variable_key)
        if not symbols:
            return [(self.expr, ())]
        poly = sympy.Poly(self.expr, *symbols)
        return [(coeff, tuple((s, e) for s, e in zip(symbols, monom) if e))
                for monom, coeff in poly.terms(order='grlex')]


def partial(p, var):
    r"""
    Partial derivative of `p` by a coordinate of the jet bundle.

    Parameters
    ----------
    p : JetPoly
    var : str, int or JetVar
        Name of an independent variable or of a dependent variable (the
        order-zero jet), or a :class:`JetVar`.

    Returns
    -------
    JetPoly

    Raises
    ------
    KeyError
        If `var` is not a variable of the signature.

    Examples
    --------
    >>> sig = Signature(['t'], ['u'])
    >>> u_t = sig.symbol(sig.jet('u', 't'))
    >>> partial(JetPoly(sig, u_t ** 2), sig.jet('u', 't'))
    JetPoly(2*u_t)

    """
    sig = p.signature
    if isinstance(var, JetVar):
        symbol = sig.symbol(var)
    elif var in sig.indep:
        symbol = sig.x(sig.indep.index(var))
    elif var in sig.dep:
        symbol = sig.symbol(sig.jet(var))
    else:
        raise KeyError(f"Variable {var} is not in the signature "
                       f"({', '.join(sig.indep + sig.dep)})")
    return JetPoly(sig, sympy.diff(p.expr, symbol))


def total_derivative(p, i):
    """
    Total derivative :math:`D_i p`.

    Parameters
    ----------
    p : JetPoly
    i : int or str
        Index or name of the independent variable.

    Returns
    -------
    JetPoly
        Polynomial of jet order at most ``p.order + 1``.

    """
    sig = p.signature
    return JetPoly(sig, d_total(sig, p.expr, sig.indep_index(i)))


def substitute(p, rules):
    """
    Simultaneous replacement of jet variables.

    Parameters
    ----------
    p : JetPoly
    rules : dict
        Maps :class:`JetVar` to the replacing :class:`JetPoly` (or value).

    Returns
    -------
    JetPoly

    """
    sig = p.signature
    mapping = {sig.symbol(var): _sympify(value) for var, value in rules.items()}
    return JetPoly(sig, p.expr.xreplace(mapping))


def pullback_section(p, section):
    r"""
    Pullback :math:`(j^\infty\phi)^* p` along a polynomial section.

    Every jet variable :math:`u^a_I` is replaced by :math:`\partial_I \phi^a`.

    Parameters
    ----------
    p : JetPoly
    section : dict
        Maps each dependent variable (name or index) to a polynomial in the
        independent variables.

    Returns
    -------
    JetPoly
        Polynomial free of jet variables.

    Examples
    --------
    >>> sig = Signature(['t'], ['u'])
    >>> t = sig.x(0)
    >>> pullback_section(JetPoly(sig, sig.symbol(sig.jet('u', 't'))), {'u': t ** 2})
    JetPoly(2*t)

    """
    sig = p.signature
    phi = {sig.dep_index(a): _sympify(value) for a, value in section.items()}
    missing = [sig.dep[a] for a in range(sig.m) if a not in phi]
    if missing:
        raise KeyError(f"The section assigns no value to {', '.join(missing)}")
    mapping = {}
    for symbol in jet_symbols(sig, p.expr):
        var = sig.jetvar(symbol)
        value = phi[var.dep]
        for i in var.idx.indices():
            value = sympy.diff(value, sig.x(i))
        mapping[symbol] = value
    return JetPoly(sig, p.expr.xreplace(mapping))


def jet_order(p):
    """Highest order of the jet variables in `p`, 0 when there are none."""
    return max((var.order for var in p.jetvars()), default=0)
