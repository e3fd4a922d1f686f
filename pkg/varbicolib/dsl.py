"""
The ``dsl`` module contains the session language: a bundle declaration,
definitions of Lagrangians, forms and source forms, orthonomic systems and
the commands to run on them.

A session reads for example ::

    bundle (t) (u)
    def W : form = dv(jet(u;t)) /\\ dv(u)
    sys osc { jet(u;t,t) -> -u }
    cmd reconstruct osc W

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging
from collections import namedtuple

import lark
import sympy

from varbicolib.forms import BiForm, Grading, GradingError, wedge
from varbicolib.jetcore import Signature
from varbicolib.pdesys import OrthonomicSystem
from varbicolib.varcalc import SourceForm

logger = logging.getLogger(__name__)

GRAMMAR = r'''
start: _statement*

_statement: bundle | definition | system | command

bundle: "bundle" names names
names: "(" NAME+ ")"
definition: "def" NAME ":" kind "=" expr
!kind: "lag" | "form" | "src"
system: "sys" NAME "{" rule ("," rule)* "}"
rule: (jet | jet_args) "->" expr
command: "cmd" verb NAME+
!verb: "el" | "theta" | "omega" | "helmholtz" | "vainberg" | "reduce"
     | "checkomega" | "reconstruct" | "compare"

?expr: sum
?sum: wedge
    | sum "+" wedge -> add
    | sum "-" wedge -> sub
?wedge: product
    | wedge "/\\" product -> wedge
?product: unary
    | product "*" unary -> mul
    | product "/" unary -> div
?unary: power
    | "-" unary -> neg
    | "+" unary
?power: atom
    | atom "^" NUMBER -> pow
?atom: NUMBER -> number
    | NAME -> name
    | jet -> jet_atom
    | "dx" "(" NAME ")" -> dx
    | "dv" "(" (jet | jet_args) ")" -> dv
    | "(" expr ")"

jet: "jet" "(" jet_args ")"
jet_args: NAME (";" NAME ("," NAME | NAME)*)?

NAME: /[A-Za-z][A-Za-z0-9]*/
COMMENT: /#[^\n]*/

%import common.NUMBER
%import common.WS
%ignore WS
%ignore COMMENT
'''

#: Kinds of definition arguments each command expects, in order.
VERBS = {
    'el': ('lag',),
    'theta': ('lag',),
    'omega': ('lag',),
    'helmholtz': ('src',),
    'vainberg': ('src',),
    'reduce': ('form', 'sys'),
    'checkomega': ('sys', 'form'),
    'reconstruct': ('sys', 'form'),
    'compare': ('lag', 'lag', 'sys'),
}

_PARSER = lark.Lark(GRAMMAR, parser='lalr', propagate_positions=True)


class SessionError(ValueError):
    """
    Raised for malformed sessions.

    Attributes
    ----------
    line, column : int or None
        Position of the offending statement or token.

    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f'line {line}, column {column}: {message}'
        super().__init__(message)
        self.line = line
        self.column = column


Definition = namedtuple('Definition', ['name', 'kind', 'value', 'line'])
Command = namedtuple('Command', ['verb', 'args', 'line'])


class Session(object):
    """
    Parsed session.

    Attributes
    ----------
    signature : Signature
    definitions : dict
        Maps each name to its :class:`Definition`, in order of appearance.
        Kinds are ``'lag'``, ``'form'``, ``'src'`` and ``'sys'``.
    commands : list of Command
        Arguments are the definitions, ordered as the verb expects them.

    """

    def __init__(self, signature):
        self.signature = signature
        self.definitions = {}
        self.commands = []

    def __getitem__(self, name):
        try:
            return self.definitions[name].value
        except KeyError:
            raise KeyError(f"No definition named {name} "
                           f"(defined: {', '.join(self.definitions) or 'none'})")


class _Evaluator(lark.Transformer):
    """Evaluates expression trees to forms over the session signature."""

    def __init__(self, session):
        super().__init__()
        self.session = session
        self.sig = session.signature

    def _scalar(self, value):
        if not value.is_homogeneous((0, 0)):
            raise GradingError('Expected a scalar, got a form of bidegree '
                               f'{", ".join(str(g) for g in sorted(value.gradings()))}')
        return value.coefficient((), ()).expr

    def number(self, children):
        return BiForm.scalar(self.sig, sympy.Rational(str(children[0])))

    def name(self, children):
        name = str(children[0])
        if name in self.sig.indep:
            return BiForm.scalar(self.sig, self.sig.x(self.sig.indep.index(name)))
        if name in self.sig.dep:
            return BiForm.scalar(self.sig, self.sig.symbol(self.sig.jet(name)))
        definition = self.session.definitions.get(name)
        if definition is None:
            raise KeyError(f'Unknown name {name}')
        if definition.kind == 'sys':
            raise TypeError(f'The system {name} cannot be used in an expression')
        value = definition.value
        return value.to_biform() if isinstance(value, SourceForm) else value

    def jet_args(self, children):
        dep, *indep = (str(c) for c in children)
        return self.sig.jet(dep, *indep)

    def jet(self, children):
        return children[0]

    def jet_atom(self, children):
        return BiForm.scalar(self.sig, self.sig.symbol(children[0]))

    def dx(self, children):
        return BiForm.dx(self.sig, str(children[0]))

    def dv(self, children):
        return BiForm.dv(self.sig, children[0])

    def add(self, children):
        return children[0] + children[1]

    def sub(self, children):
        return children[0] - children[1]

    def neg(self, children):
        return -children[0]

    def wedge(self, children):
        return wedge(children[0], children[1])

    def mul(self, children):
        left, right = children
        if left.is_homogeneous((0, 0)):
            return right * self._scalar(left)
        if right.is_homogeneous((0, 0)):
            return left * self._scalar(right)
        raise TypeError('Products of forms are written with /\\')

    def div(self, children):
        divisor = self._scalar(children[1])
        if not divisor.is_Rational or divisor == 0:
            raise TypeError('Division is only by non-zero rational numbers')
        return children[0] * (1 / divisor)

    def pow(self, children):
        base = self._scalar(children[0])
        exponent = sympy.Rational(str(children[1]))
        if not exponent.is_Integer or exponent < 0:
            raise TypeError(f'Exponents are non-negative integers, got {exponent}')
        return BiForm.scalar(self.sig, base ** int(exponent))


def _kind_value(sig, kind, value):
    """Check a definition against its declared kind."""
    if kind == 'lag':
        if not value.is_homogeneous(Grading(sig.n, 0)):
            raise GradingError(f'A Lagrangian must have bidegree ({sig.n},0); write the '
                               f'volume form explicitly')
        return value
    if kind == 'src':
        if not value.is_homogeneous(Grading(sig.n, 1)):
            raise GradingError(f'A source form must have bidegree ({sig.n},1)')
        return SourceForm.from_biform(value)
    return value


def _value_kind(definition):
    return 'form' if definition.kind in ('lag', 'src') else definition.kind


def _resolve_command(session, verb, names):
    expected = VERBS[verb]
    if len(names) != len(expected):
        raise TypeError(f'{verb} takes {len(expected)} arguments, got {len(names)}')
    definitions = []
    for name in names:
        if name not in session.definitions:
            raise KeyError(f'Unknown name {name}')
        definitions.append(session.definitions[name])
    ordered = []
    remaining = list(definitions)
    for kind in expected:
        match = next((d for d in remaining if d.kind == kind), None)
        if match is None and kind == 'form':
            match = next((d for d in remaining if _value_kind(d) == 'form'), None)
        if match is None:
            raise TypeError(f'{verb} expects arguments of kinds {", ".join(expected)}, '
                            f'got {", ".join(d.kind for d in definitions)}')
        remaining.remove(match)
        ordered.append(match)
    return ordered


def _rule(evaluator, tree):
    lead_tree, expr_tree = tree.children
    lead = evaluator.transform(lead_tree)
    rhs = evaluator.transform(expr_tree)
    return lead, evaluator._scalar(rhs)


def parse_session(text):
    """
    Parse a session.

    Parameters
    ----------
    text : str

    Returns
    -------
    Session

    Raises
    ------
    SessionError
        On lexical and syntax errors, unknown names, badly typed
        expressions, definitions that do not match their declared kind and
        rejected systems, with the position of the offending statement.

    Examples
    --------
    >>> session = parse_session('bundle (t) (u)\\n'
    ...                         'def L : lag = 1/2*jet(u;t)^2 /\\\\ dx(t)')
    >>> session['L'].grading
    Grading(h=1, v=0)

    """
    try:
        tree = _PARSER.parse(text)
    except lark.exceptions.UnexpectedInput as error:
        found = getattr(error, 'token', None) or getattr(error, 'char', None)
        message = f'unexpected {str(found)!r}' if found else 'unexpected end of input'
        raise SessionError(message, error.line, error.column) from None

    statements = tree.children
    if not statements or statements[0].data != 'bundle':
        raise SessionError('A session starts with a bundle declaration', 1, 1)
    session = None
    for statement in statements:
        line, column = statement.meta.line, statement.meta.column
        try:
            if statement.data == 'bundle':
                if session is not None:
                    raise ValueError('Only one bundle declaration is allowed')
                indep, dep = ([str(t) for t in names.children] for names in statement.children)
                session = Session(Signature(indep, dep))
                continue
            evaluator = _Evaluator(session)
            if statement.data == 'command':
                verb_tree, *names = statement.children
                verb = str(verb_tree.children[0])
                ordered = _resolve_command(session, verb, [str(n) for n in names])
                session.commands.append(Command(verb, tuple(ordered), line))
                continue
            name = str(statement.children[0])
            if name in session.definitions or name in session.signature.indep + \
                    session.signature.dep:
                raise ValueError(f'The name {name} is already defined')
            if statement.data == 'definition':
                kind = str(statement.children[1].children[0])
                value = _kind_value(session.signature, kind,
                                    evaluator.transform(statement.children[2]))
            else:
                kind = 'sys'
                rules = [_rule(evaluator, rule) for rule in statement.children[1:]]
                value = OrthonomicSystem(session.signature, rules)
            session.definitions[name] = Definition(name, kind, value, line)
        except lark.exceptions.VisitError as error:
            raise SessionError(_message(error.orig_exc), line, column) from None
        except (ValueError, KeyError, TypeError) as error:
            if isinstance(error, SessionError):
                raise
            raise SessionError(_message(error), line, column) from None
    logger.debug(f'Parsed session with {len(session.definitions)} definitions and '
                 f'{len(session.commands)} commands')
    return session


def _message(error):
    if isinstance(error, KeyError) and error.args:
        return str(error.args[0])
    return str(error)
