"""
The ``render`` module contains the output formats of polynomials, forms
and source forms: the canonical text form, which the session language
reads back, LaTeX and a JSON-compatible structure.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging

from varbicolib.forms import BiForm
from varbicolib.jetcore import JetPoly
from varbicolib.varcalc import SourceForm

logger = logging.getLogger(__name__)

#: Version tag of the JSON output.
JSON_SCHEMA = 'varbico-1'

WEDGE = ' /\\ '


def _index_names(sig, var):
    return [sig.indep[i] for i in var.idx.indices()]


def jet_text(sig, var):
    """``u`` for order zero, ``jet(u;t,x)`` otherwise."""
    name = sig.dep[var.dep]
    if not var.order:
        return name
    return f"jet({name};{','.join(_index_names(sig, var))})"


def _dv_text(sig, var):
    name = sig.dep[var.dep]
    if not var.order:
        return f'dv({name})'
    return f"dv({name};{','.join(_index_names(sig, var))})"


def _join(parts):
    if not parts:
        return '0'
    negative, text = parts[0]
    out = ('-' if negative else '') + text
    for negative, text in parts[1:]:
        out += (' - ' if negative else ' + ') + text
    return out


class _Style(object):
    """Spelling of the pieces of a rendered expression."""

    times = '*'
    wedge = WEDGE
    apply = ' * '

    def __init__(self, sig):
        self.sig = sig

    def symbol(self, symbol):
        var = self.sig.jetvar(symbol)
        return jet_text(self.sig, var) if var is not None else str(symbol)

    def rational(self, value):
        return str(value)

    def power(self, base, exponent):
        return base if exponent == 1 else f'{base}^{exponent}'

    def dx(self, i):
        return f'dx({self.sig.indep[i]})'

    def dv(self, var):
        return _dv_text(self.sig, var)

    def group(self, text):
        return f'({text})'


class _LatexStyle(_Style):

    times = ' '
    wedge = ' \\wedge '
    apply = ' \\, '

    def symbol(self, symbol):
        var = self.sig.jetvar(symbol)
        if var is None:
            return str(symbol)
        name = self.sig.dep[var.dep]
        if not var.order:
            return name
        return f"{name}_{{{''.join(_index_names(self.sig, var))}}}"

    def rational(self, value):
        if value.q == 1:
            return str(value.p)
        return f'\\frac{{{value.p}}}{{{value.q}}}'

    def power(self, base, exponent):
        return base if exponent == 1 else f'{base}^{{{exponent}}}'

    def dx(self, i):
        return f'\\mathrm{{d}}{self.sig.indep[i]}'

    def dv(self, var):
        return f'\\mathrm{{d}}_{{v}} {self.symbol(self.sig.symbol(var))}'

    def group(self, text):
        return f'\\left({text}\\right)'


def _poly_parts(style, poly):
    parts = []
    for coeff, factors in poly.monomials():
        magnitude = abs(coeff)
        variables = style.times.join(style.power(style.symbol(s), e) for s, e in factors)
        if not factors:
            text = style.rational(magnitude)
        elif magnitude == 1:
            text = variables
        else:
            text = style.rational(magnitude) + style.times + variables
        parts.append((bool(coeff < 0), text))
    return parts


def _form_parts(style, form):
    parts = []
    for hgen, vgen, coeff in form.terms():
        generators = style.wedge.join([style.dx(i) for i in hgen] +
                                      [style.dv(var) for var in vgen])
        monomials = _poly_parts(style, coeff)
        if not generators:
            parts.extend(monomials)
        elif len(monomials) == 1:
            negative, text = monomials[0]
            parts.append((negative, generators if text == '1' else
                          f'{text}{style.apply}{generators}'))
        else:
            parts.append((False, f'{style.group(_join(monomials))}{style.apply}{generators}'))
    return parts


def _render(value, style_class):
    if isinstance(value, SourceForm):
        value = value.to_biform()
    if isinstance(value, BiForm):
        return _join(_form_parts(style_class(value.signature), value))
    if isinstance(value, JetPoly):
        return _join(_poly_parts(style_class(value.signature), value))
    raise TypeError(f'Cannot render a {type(value).__name__}')


def render_text(value):
    """
    Canonical text of a polynomial, form or source form.

    The text is valid input of the session language and denotes the same
    value.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u, u_t = sig.jet('u'), sig.jet('u', 't')
    >>> render_text(BiForm(sig, {((), (u_t, u)): 1}))
    '-dv(u) /\\\\ dv(u;t)'

    """
    return _render(value, _Style)


def render_latex(value):
    """LaTeX of a polynomial, form or source form."""
    return _render(value, _LatexStyle)


def _poly_json(poly):
    sig = poly.signature
    style = _Style(sig)
    return [{'coeff': str(coeff),
             'vars': [{'name': style.symbol(s), 'power': int(e)} for s, e in factors]}
            for coeff, factors in poly.monomials()]


def to_json(value):
    """
    JSON-compatible structure of a polynomial, form or source form.

    Forms become ``{"kind", "grading", "terms"}`` where every term lists its
    coefficient monomials (rational coefficients as strings), horizontal
    generators by name and vertical generators as ``{"dep", "idx"}`` with
    the derivative counts per independent variable.

    """
    if isinstance(value, JetPoly):
        return {'kind': 'poly', 'monomials': _poly_json(value)}
    kind = 'source' if isinstance(value, SourceForm) else 'form'
    if isinstance(value, SourceForm):
        value = value.to_biform()
    if not isinstance(value, BiForm):
        raise TypeError(f'Cannot convert a {type(value).__name__} to JSON')
    sig = value.signature
    grading = value.grading
    return {
        'kind': kind,
        'grading': list(grading) if grading is not None else None,
        'terms': [{'coeff': _poly_json(coeff),
                   'hgen': [sig.indep[i] for i in hgen],
                   'vgen': [{'dep': sig.dep[var.dep], 'idx': list(var.idx)}
                            for var in vgen]}
                  for hgen, vgen, coeff in value.terms()],
    }


#: Renderers by output format.
FORMATS = {'text': render_text, 'latex': render_latex, 'json': to_json}


def render(value, fmt='text'):
    """
    Render a polynomial, form or source form in one of :data:`FORMATS`.

    Raises
    ------
    KeyError
        If `fmt` is not a known format.

    """
    try:
        renderer = FORMATS[fmt]
    except KeyError:
        raise KeyError(f'Unknown format {fmt}. Available formats: '
                       f"{', '.join(sorted(FORMATS))}")
    return renderer(value)
