"""
The ``cli`` module contains the ``varbico`` command, which runs the
commands of a session file and prints their results.

Exit codes are 0 if every check passed, 1 if a check failed, 2 on input
errors (syntax, typing, rejected systems) and 3 if a verdict stayed
undecided and nothing failed.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import argparse
import json
import logging
import sys

from varbicolib import descent, lagcmp, pdesys, varcalc
from varbicolib.dsl import SessionError, parse_session
from varbicolib.jetcore import JetVar
from varbicolib.modelchain import Modelchain
from varbicolib.render import FORMATS, JSON_SCHEMA, jet_text, render
from varbicolib.session import example_text, list_examples
from varbicolib.varcalc import SourceForm

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3

# status of a command -> exit code, in order of precedence
_STATUS_CODES = (('error', EXIT_INPUT), ('fail', EXIT_FAIL), ('undecided', EXIT_UNDECIDED))


def _form(definition):
    value = definition.value
    return value.to_biform() if isinstance(value, SourceForm) else value


def _leading_jet(system, key):
    idx, rule = key
    lead = system.rules[rule][0]
    return jet_text(system.signature, JetVar(lead.dep, lead.idx.plus(idx)))


def _sorted_keys(keys):
    return sorted(keys, key=lambda key: (key[1], key[0].key()))


def _gap_lines(source):
    sig = source.signature
    lines = [('helmholtz', 'fail')]
    for (a, b, idx), value in varcalc.linearization_adjoint_gap(source).items():
        names = [sig.indep[i] for i in idx.indices()]
        label = f"{sig.dep[a]},{sig.dep[b]}" + (f";{','.join(names)}" if names else '')
        lines.append((f'gap[{label}]', value))
    return lines


def _el(lagrangian, depth, bounds):
    el = varcalc.first_variation(lagrangian.value).el
    sig = el.signature
    return 'ok', [(f'EL[{sig.dep[a]}]', coeff) for a, coeff in enumerate(el.coeffs)]


def _theta(lagrangian, depth, bounds):
    return 'ok', [('theta', varcalc.first_variation(lagrangian.value).theta)]


def _omega(lagrangian, depth, bounds):
    return 'ok', [('omega', varcalc.presymplectic_current(lagrangian.value))]


def _helmholtz(source, depth, bounds):
    if varcalc.helmholtz_check(source.value).passed:
        return 'ok', [('helmholtz', 'pass')]
    return 'fail', _gap_lines(source.value)


def _vainberg(source, depth, bounds):
    if not varcalc.helmholtz_check(source.value).passed:
        return 'fail', _gap_lines(source.value)
    return 'ok', [('L', varcalc.vainberg_lagrangian(source.value))]


def _reduce(form, system, depth, bounds):
    system = system.value
    certificate = pdesys.reduce(_form(form), system)
    lines = [('normal', certificate.normal)]
    for name, part in (('lambda', certificate.lam), ('mu', certificate.mu)):
        for key in _sorted_keys(part):
            lines.append((f'{name}[{_leading_jet(system, key)}]', part[key]))
    return 'ok', lines


def _checkomega(system, form, depth, bounds):
    report = descent.check_compatibility(_form(form), system.value, depth)
    lines = [('dh_closed', report.dh_closed), ('dv_closed', report.dv_closed),
             ('compatible', report.compatible)]
    if not report.dh_closed:
        lines.append(('dh_residual', report.dh_certificate.normal))
    if not report.dv_closed:
        lines.append(('dv_residual', report.dv_certificate.normal))
    return ('ok' if report.compatible else 'fail'), lines


def _reconstruct(system, form, depth, bounds):
    system = system.value
    try:
        result = Modelchain(system, _form(form), depth=depth).run_model().result
    except descent.IncompatibleCurrentError as error:
        logger.error(str(error))
        return 'fail', [('compatible', False)]
    sig = system.signature
    lines = [('L', result.lagrangian), ('theta', result.theta), ('omega', result.omega)]
    lines += [(f'EL[{sig.dep[a]}]', coeff) for a, coeff in enumerate(result.el.coeffs)]
    for key in _sorted_keys(result.multipliers):
        for a, coeff in enumerate(result.multipliers[key].coeffs):
            if not coeff.is_zero:
                lines.append((f'epsilon[{_leading_jet(system, key)}][{sig.dep[a]}]', coeff))
    return 'ok', lines


def _compare(lagrangian, other, system, depth, bounds):
    verdict = lagcmp.contains(lagrangian.value, other.value, system.value, bounds, depth)
    sig = system.value.signature
    lines = [('el_contained', 'pass' if verdict.el_contained.passed else 'fail')]
    if not verdict.el_contained.passed:
        a, normal = verdict.el_contained.witness
        lines.append((f'witness[{sig.dep[a]}]', normal))
    lines.append(('omega_match', verdict.omega_match))
    if verdict.pi is not None:
        lines.append(('pi', verdict.pi))
    elif verdict.omega_match != 'exact':
        lines.append(('delta', verdict.delta))
    if not verdict.el_contained.passed or verdict.omega_match == 'mismatch':
        return 'fail', lines
    if verdict.omega_match == 'undecided_within_bounds':
        return 'undecided', lines
    return 'ok', lines


COMMANDS = {
    'el': _el,
    'theta': _theta,
    'omega': _omega,
    'helmholtz': _helmholtz,
    'vainberg': _vainberg,
    'reduce': _reduce,
    'checkomega': _checkomega,
    'reconstruct': _reconstruct,
    'compare': _compare,
}


def _render_value(value, fmt):
    if isinstance(value, bool):
        return value if fmt == 'json' else str(value).lower()
    if isinstance(value, str):
        return value
    return render(value, fmt)


def run_command(command, depth=pdesys.DEFAULT_DEPTH, bounds=lagcmp.DEFAULT_BOUNDS):
    """
    Execute a single command of a session.

    Returns
    -------
    tuple
        The status (``'ok'``, ``'fail'``, ``'undecided'`` or ``'error'``)
        and a list of ``(name, value)`` pairs.

    """
    try:
        return COMMANDS[command.verb](*command.args, depth=depth, bounds=bounds)
    except (ValueError, KeyError) as error:
        logger.error(f'line {command.line}: {command.verb} failed: {error}')
        return 'error', []


def run(session, fmt='text', bounds=lagcmp.DEFAULT_BOUNDS, depth=pdesys.DEFAULT_DEPTH,
        out=None):
    r"""
    Run the commands of a session in order and print their results.

    Parameters
    ----------
    session : Session
    fmt : str
        ``'text'`` (default), ``'latex'`` or ``'json'``.
    bounds : tuple of int
        Ansatz bounds of ``compare``.
    depth : int
        Integrability depth.
    out : file-like, optional
        Destination of the results. Default: standard output.

    Returns
    -------
    int
        Exit code.

    """
    out = sys.stdout if out is None else out
    statuses = set()
    documents = []
    for command in session.commands:
        status, lines = run_command(command, depth, bounds)
        statuses.add(status)
        header = f"{command.verb} {' '.join(arg.name for arg in command.args)}"
        rendered = [(name, _render_value(value, fmt)) for name, value in lines]
        if fmt == 'json':
            documents.append({'command': header, 'status': status,
                              'results': dict(rendered)})
            continue
        out.write(('% ' if fmt == 'latex' else '# ') + header + '\n')
        for name, text in rendered:
            out.write(f'{name} = {text}\n')
    if fmt == 'json':
        json.dump({'schema': JSON_SCHEMA, 'commands': documents}, out, indent=2)
        out.write('\n')
    for status, code in _STATUS_CODES:
        if status in statuses:
            return code
    return EXIT_OK


def _bounds(text):
    try:
        order, degree = (int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected ORDER,DEGREE, got {text!r}')
    if order < 0 or degree < 0:
        raise argparse.ArgumentTypeError('bounds must be non-negative')
    return order, degree


def _parser():
    parser = argparse.ArgumentParser(
        prog='varbico',
        description='Run a session of the variational bicomplex engine.')
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('file', nargs='?', help="session file, '-' for standard input")
    source.add_argument('--example', metavar='NAME',
                        help='run a bundled example session')
    source.add_argument('--list-examples', action='store_true',
                        help='list the bundled example sessions')
    parser.add_argument('--format', choices=sorted(FORMATS), default='text')
    parser.add_argument('--bounds', type=_bounds, default=lagcmp.DEFAULT_BOUNDS,
                        metavar='ORDER,DEGREE',
                        help='jet order and degree of the compare ansatz (default: %(default)s)')
    parser.add_argument('--depth', type=int, default=pdesys.DEFAULT_DEPTH,
                        help='integrability depth (default: %(default)s)')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    return parser


def _read(args):
    if args.example is not None:
        return example_text(args.example)
    if args.file == '-':
        return sys.stdin.read()
    with open(args.file, encoding='utf-8') as f:
        return f.read()


def main(argv=None):
    """Entry point of the ``varbico`` command."""
    args = _parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s: %(name)s: %(message)s')
    if args.list_examples:
        print('\n'.join(list_examples()))
        return EXIT_OK
    if args.depth < 1:
        logger.error(f'--depth must be at least 1, got {args.depth}')
        return EXIT_INPUT
    try:
        session = parse_session(_read(args))
    except (SessionError, UnicodeDecodeError, KeyError, OSError) as error:
        message = error.args[0] if isinstance(error, KeyError) else error
        logger.error(str(message))
        return EXIT_INPUT
    return run(session, args.format, args.bounds, args.depth)


if __name__ == '__main__':
    sys.exit(main())
