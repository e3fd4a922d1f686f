"""
The ``lagcmp`` module contains the comparison of Lagrangians: equivalence
up to boundary terms, the containment of Euler-Lagrange systems together
with the agreement of presymplectic currents, and a bounded search for
on-shell horizontal primitives.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import itertools
import logging

import sympy
from sympy.polys.monomials import itermonomials

from varbicolib.forms import BiForm, Grading, require_grading
from varbicolib.jetcore import JetVar, MultiIndex
from varbicolib.pdesys import DEFAULT_DEPTH, onshell_dh, reduce, require_integrable
from varbicolib.varcalc import (CheckResult, PreconditionError, euler_operator,
                                is_null_lagrangian, presymplectic_current)

logger = logging.getLogger(__name__)

#: Jet order and polynomial degree of the ansatz of :func:`solve_dh_exact`.
DEFAULT_BOUNDS = (2, 2)

#: Possible outcomes of the comparison of presymplectic currents.
OMEGA_VERDICTS = ('exact', 'exact_up_to_dh', 'undecided_within_bounds', 'mismatch')


class ContainmentVerdict(object):
    r"""
    Outcome of :func:`contains`.

    Attributes
    ----------
    el_contained : CheckResult
        Passes iff every Euler-Lagrange expression of the second Lagrangian
        reduces to zero on the equations of the first. The witness is the
        pair (dependent-variable index, normal form) of the first failure.
    omega_match : str
        One of ``'exact'`` (the currents agree on-shell),
        ``'exact_up_to_dh'`` (they differ by :math:`d_h^E \pi`),
        ``'undecided_within_bounds'`` or ``'mismatch'`` (the difference is
        provably not horizontally exact on-shell).
    pi : BiForm or None
        The primitive found for ``'exact_up_to_dh'``.
    delta : BiForm
        On-shell difference of the presymplectic currents.

    """

    def __init__(self, el_contained, omega_match, delta, pi=None):
        if omega_match not in OMEGA_VERDICTS:
            raise ValueError(f'Unknown verdict {omega_match}')
        self.el_contained = el_contained
        self.omega_match = omega_match
        self.delta = delta
        self.pi = pi

    @property
    def holds(self):
        """True iff containment and agreement of the currents are established."""
        return self.el_contained.passed and self.omega_match in ('exact', 'exact_up_to_dh')


def equivalent_mod_boundary(lagrangian, other):
    """
    True iff the two Lagrangians differ by a horizontally exact form.

    Raises
    ------
    GradingError
        If either is not of bidegree (n,0).

    """
    n = lagrangian.signature.n
    require_grading(lagrangian, Grading(n, 0), 'Lagrangian')
    require_grading(other, Grading(n, 0), 'Lagrangian')
    return is_null_lagrangian(other - lagrangian)


def _parametric_jets(system, order):
    sig = system.signature
    found = []
    for total in range(order + 1):
        for counts in itertools.product(range(total + 1), repeat=sig.n):
            if sum(counts) != total:
                continue
            for a in range(sig.m):
                var = JetVar(a, MultiIndex(counts))
                if not system.is_principal(var):
                    found.append(var)
    return sorted(found, key=JetVar.key)


def solve_dh_exact(delta, system, bounds=DEFAULT_BOUNDS):
    r"""
    Search an internal :math:`\pi` of bidegree (n-2,2) with
    :math:`d_h^E \pi = \hat\delta`.

    The coefficients of :math:`\pi` range over polynomials of bounded
    degree in the independent variables and the parametric jets of bounded
    order; :math:`d_h^E \pi = \hat\delta` is then a linear system over the
    rationals for the unknown coefficients.

    Parameters
    ----------
    delta : BiForm
        Internal form of bidegree (n-1,2).
    system : OrthonomicSystem
    bounds : tuple of int
        Maximal jet order and polynomial degree of the ansatz.
        Default: :data:`DEFAULT_BOUNDS`.

    Returns
    -------
    BiForm or None
        A primitive, or None when none exists within the bounds.

    Raises
    ------
    PreconditionError
        If the base has fewer than two dimensions or `delta` is not internal.

    """
    sig = system.signature
    if sig.n < 2:
        raise PreconditionError('Horizontal primitives of bidegree (n-2,2) need at '
                                'least two independent variables')
    require_grading(delta, Grading(sig.n - 1, 2), 'current difference')
    if not system.is_internal(delta):
        raise PreconditionError('The current difference must be in internal coordinates')
    if delta.is_zero:
        return BiForm.zero(sig)

    order, degree = bounds
    jets = _parametric_jets(system, order)
    variables = [sig.x(i) for i in range(sig.n)] + [sig.symbol(var) for var in jets]
    monomials = sorted(itermonomials(variables, degree), key=sympy.default_sort_key)
    unknowns = []
    terms = {}
    for hgen in itertools.combinations(range(sig.n), sig.n - 2):
        for pair in itertools.combinations(jets, 2):
            coeff = 0
            for monomial in monomials:
                unknown = sympy.Dummy(f'c{len(unknowns)}')
                unknowns.append(unknown)
                coeff += unknown * monomial
            terms[(hgen, pair)] = coeff
    ansatz = BiForm(sig, terms)
    logger.debug(f'Primitive ansatz with {len(unknowns)} unknowns over '
                 f'{len(jets)} parametric jets')
    if not unknowns:
        logger.info(f'No primitive within jet order {order} and degree {degree}')
        return None

    residual = onshell_dh(ansatz, system) - delta
    equations = []
    for _, coeff in residual.items():
        gens = sorted(coeff.free_symbols - set(unknowns), key=sig.variable_key)
        equations.extend(sympy.Poly(coeff, *gens).coeffs() if gens else [coeff])
    solutions = list(sympy.linsolve(equations, unknowns))
    if not solutions:
        logger.info(f'No primitive within jet order {order} and degree {degree}')
        return None
    solution = solutions[0]
    free = {symbol: 0 for value in solution for symbol in value.free_symbols}
    mapping = {unknown: value.xreplace(free) for unknown, value in zip(unknowns, solution)}
    pi = ansatz.map_coefficients(lambda c: c.xreplace(mapping))
    if onshell_dh(pi, system) != delta:
        raise RuntimeError('The primitive found does not reproduce the current difference')
    return pi


def contains(lagrangian, other, system, bounds=DEFAULT_BOUNDS, depth=DEFAULT_DEPTH):
    r"""
    Check whether `other` contains `lagrangian`.

    The Euler-Lagrange expressions of `other` must vanish on the equations
    of `lagrangian`, and both presymplectic currents must agree there up to
    an on-shell horizontally exact form.

    Parameters
    ----------
    lagrangian, other : BiForm
        Bidegree (n,0).
    system : OrthonomicSystem
        Orthonomic form of the Euler-Lagrange equations of `lagrangian`.
    bounds : tuple of int
        Bounds handed to :func:`solve_dh_exact`.
    depth : int
        Depth of the integrability check of `system`.

    Returns
    -------
    ContainmentVerdict

    Raises
    ------
    PreconditionError
        If the Euler-Lagrange expressions of `lagrangian` do not reduce to
        zero modulo `system`.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> from varbicolib.pdesys import OrthonomicSystem
    >>> sig = Signature(['t'], ['u'])
    >>> u, u_t = sig.symbol(sig.jet('u')), sig.symbol(sig.jet('u', 't'))
    >>> lag = BiForm.volume(sig, (u_t ** 2 - u ** 2) / 2)
    >>> osc = OrthonomicSystem(sig, [(sig.jet('u', 't', 't'), -u)])
    >>> contains(lag, 3 * lag, osc).omega_match
    'mismatch'

    """
    sig = system.signature
    require_integrable(system, depth)
    for a, coeff in enumerate(euler_operator(lagrangian).coeffs):
        if not reduce(coeff, system).normal.is_zero:
            raise PreconditionError(f'The system does not contain the Euler-Lagrange '
                                    f'equation of {sig.dep[a]}')

    el_contained = CheckResult(True, None)
    for a, coeff in enumerate(euler_operator(other).coeffs):
        normal = reduce(coeff, system).normal
        if not normal.is_zero:
            el_contained = CheckResult(False, (a, normal))
            break

    delta = reduce(presymplectic_current(lagrangian) - presymplectic_current(other),
                   system).normal
    pi = None
    if delta.is_zero:
        omega_match = 'exact'
    elif sig.n == 1 or not onshell_dh(delta, system).is_zero:
        omega_match = 'mismatch'
    else:
        pi = solve_dh_exact(delta, system, bounds)
        omega_match = 'undecided_within_bounds' if pi is None else 'exact_up_to_dh'
    logger.debug(f'Containment: el {el_contained.passed}, omega {omega_match}')
    return ContainmentVerdict(el_contained, omega_match, delta, pi)
