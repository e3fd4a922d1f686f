"""
The ``pdesys`` module contains orthonomic PDE systems treated as rewrite
systems: the split of jet variables into principal and parametric ones,
the cross-derivative integrability check, reduction of forms modulo the
prolonged equations with a certificate, and the on-shell differentials
acting on forms in internal coordinates.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import itertools
import logging

import sympy

from varbicolib.forms import BiForm, d_h, d_v, wedge
from varbicolib.jetcore import JetPoly, JetVar, MultiIndex, _sympify, d_total, jet_symbols
from varbicolib.varcalc import CheckResult, PreconditionError

logger = logging.getLogger(__name__)

#: Number of additional derivatives explored by the integrability check.
DEFAULT_DEPTH = 2
#: Upper bound on the substitution steps of a single reduction.
MAX_REDUCTION_STEPS = 10000


class IntegrabilityError(ValueError):
    """Raised when a system fails the cross-derivative check."""


class PrincipalClassifier(object):
    """
    Split of the jet variables into principal and parametric ones.

    A jet variable is principal when it is a derivative of a lead
    (including the lead itself), and parametric otherwise.

    Parameters
    ----------
    leads : list of JetVar

    """

    def __init__(self, leads):
        self.leads = tuple(leads)

    def __call__(self, var):
        return any(lead.divides(var) for lead in self.leads)

    def rule_for(self, var):
        """
        Rule used to eliminate the principal `var`.

        Returns
        -------
        tuple or None
            ``(B, J)`` with ``var == lead_B + J`` for the lead of highest order
            (lowest rule index on ties), None when `var` is parametric.

        """
        best = None
        for index, lead in enumerate(self.leads):
            if lead.divides(var) and (best is None or lead.order > self.leads[best].order):
                best = index
        if best is None:
            return None
        return best, var.idx.minus(self.leads[best].idx)


class OrthonomicSystem(object):
    r"""
    PDE system solved for distinct leading derivatives.

    Every rule :math:`u^a_I \to r` stands for the equation
    :math:`f = u^a_I - r = 0`; its prolongations are
    :math:`f_{JB} = u^a_{I+J} - D_J r`.

    Parameters
    ----------
    signature : Signature
    rules : list of (JetVar, JetPoly)
        Lead and right-hand side of each equation.

    Attributes
    ----------
    rules : tuple of (JetVar, JetPoly)
    classifier : PrincipalClassifier

    Raises
    ------
    ValueError
        If two leads coincide or one is a derivative of another, or if a
        right-hand side contains a principal jet variable.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> osc = OrthonomicSystem(sig, [(sig.jet('u', 't', 't'), -sig.symbol(sig.jet('u')))])
    >>> osc.order
    2

    """

    def __init__(self, signature, rules):
        self.signature = signature
        self.rules = tuple((lead, JetPoly(signature, _sympify(rhs))) for lead, rhs in rules)
        leads = [lead for lead, _ in self.rules]
        for first, second in itertools.permutations(leads, 2):
            if first.divides(second):
                raise ValueError(f'Lead {self._name(first)} coincides with or divides '
                                 f'lead {self._name(second)}')
        self.classifier = PrincipalClassifier(leads)
        for lead, rhs in self.rules:
            principal = [var for var in rhs.jetvars() if self.classifier(var)]
            if principal:
                raise ValueError(f'The right-hand side of {self._name(lead)} contains '
                                 f'the principal jet {self._name(principal[0])}')
        self._prolonged = {}

    def _name(self, var):
        sig = self.signature
        return str(sig.symbol(var))

    def __len__(self):
        return len(self.rules)

    def __repr__(self):
        rules = ', '.join(f'{self._name(lead)} -> {rhs.expr}' for lead, rhs in self.rules)
        return f'OrthonomicSystem({rules})'

    @property
    def order(self):
        return max((lead.order for lead, _ in self.rules), default=0)

    def is_principal(self, var):
        return self.classifier(var)

    def prolonged_rhs(self, rule, idx):
        """Sympy expression :math:`D_J r_B`, cached."""
        key = (rule, idx)
        if key not in self._prolonged:
            if idx.order == 0:
                value = self.rules[rule][1].expr
            else:
                i = next(k for k, c in enumerate(idx) if c)
                value = d_total(self.signature, self.prolonged_rhs(rule, idx.shift(i, -1)), i)
            self._prolonged[key] = value
        return self._prolonged[key]

    def equation(self, idx, rule):
        """Prolonged equation :math:`f_{JB}` as a JetPoly."""
        lead = self.rules[rule][0]
        sig = self.signature
        return JetPoly(sig, sig.symbol(JetVar(lead.dep, lead.idx.plus(idx)))
                       - self.prolonged_rhs(rule, idx))

    def is_internal(self, form):
        """True iff `form` involves parametric jet variables only."""
        return not any(self.classifier(var) for var in form.jetvars())


class ReductionCertificate(object):
    r"""
    Normal form of a reduction together with its proof.

    The identity

    .. math:: a = \mathrm{normal} + \sum f_{JB} \lambda^{JB}
              + \sum d_v f_{JB} \wedge \mu^{JB}

    holds exactly, see :meth:`reassemble`.

    Attributes
    ----------
    normal : BiForm or JetPoly
        Free of principal jet variables; a JetPoly when a JetPoly was reduced.
    lam : dict
        Maps ``(J, B)`` to the BiForm :math:`\lambda^{JB}`.
    mu : dict
        Maps ``(J, B)`` to the BiForm :math:`\mu^{JB}`.
    steps : int
        Number of substitution steps performed.

    """

    def __init__(self, system, normal, lam, mu, steps, scalar=False):
        self.system = system
        self._normal = normal
        self.lam = lam
        self.mu = mu
        self.steps = steps
        self.scalar = scalar

    @property
    def normal(self):
        if self.scalar:
            return self._normal.coefficient((), ())
        return self._normal

    @property
    def is_zero(self):
        return self._normal.is_zero

    def reassemble(self):
        """Recombine the certificate into the reduced input."""
        sig = self.system.signature
        total = self._normal
        for (idx, rule), value in self.lam.items():
            total = total + self.system.equation(idx, rule) * value
        for (idx, rule), value in self.mu.items():
            df = d_v(BiForm.scalar(sig, self.system.equation(idx, rule)))
            total = total + wedge(df, value)
        if self.scalar:
            return total.coefficient((), ())
        return total


def _highest_principal(system, form):
    found = [var for var in form.jetvars() if system.classifier(var)]
    if not found:
        return None
    return max(found, key=lambda var: (var.order, var.key()))


def reduce(a, system):
    r"""
    Reduce a form modulo the prolonged equations of `system`.

    The highest principal jet variable :math:`w = u^{lead}_{I+J}` is
    eliminated in each step: occurrences in coefficients are replaced by
    :math:`g = D_J r_B`, the generator :math:`d_v w` by :math:`d_v g`. The
    differences are recorded as multiples of :math:`f_{JB}` and
    :math:`d_v f_{JB}`.

    Parameters
    ----------
    a : BiForm or JetPoly
    system : OrthonomicSystem

    Returns
    -------
    ReductionCertificate

    Raises
    ------
    RuntimeError
        If the reduction does not terminate within
        :data:`MAX_REDUCTION_STEPS` steps.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u, u_tt = sig.jet('u'), sig.jet('u', 't', 't')
    >>> osc = OrthonomicSystem(sig, [(u_tt, -sig.symbol(u))])
    >>> reduce(BiForm.dv(sig, u_tt), osc).normal
    BiForm(-dv(u))

    """
    sig = system.signature
    scalar = isinstance(a, JetPoly)
    current = BiForm.scalar(sig, a) if scalar else a
    lam_terms = {}
    mu_terms = {}

    def add(target, key, term, value):
        terms = target.setdefault(key, {})
        terms[term] = terms.get(term, 0) + value

    steps = 0
    while True:
        var = _highest_principal(system, current)
        if var is None:
            break
        if steps >= MAX_REDUCTION_STEPS:
            raise RuntimeError(f'Reduction did not terminate after {steps} steps')
        steps += 1
        rule, idx = system.classifier.rule_for(var)
        key = (idx, rule)
        g = system.prolonged_rhs(rule, idx)
        w = sig.symbol(var)
        g_symbols = jet_symbols(sig, g)
        new_terms = {}
        for (hgen, vgen), coeff in current.items():
            if w in coeff.free_symbols:
                substituted = 0
                quotient = 0
                for (k,), c_k in sympy.Poly(coeff, w).terms():
                    substituted += c_k * g ** k
                    quotient += c_k * sum(w ** j * g ** (k - 1 - j) for j in range(k))
                add(lam_terms, key, (hgen, vgen), quotient)
                coeff = sympy.expand(substituted)
                if coeff == 0:
                    continue
            if var in vgen:
                k = vgen.index(var)
                rest = vgen[:k] + vgen[k + 1:]
                add(mu_terms, key, (hgen, rest), (-1) ** (len(hgen) + k) * coeff)
                for symbol in g_symbols:
                    term = (hgen, vgen[:k] + (sig.jetvar(symbol),) + vgen[k + 1:])
                    new_terms[term] = new_terms.get(term, 0) + coeff * sympy.diff(g, symbol)
            else:
                new_terms[(hgen, vgen)] = new_terms.get((hgen, vgen), 0) + coeff
        current = BiForm(sig, new_terms)

    lam = {key: BiForm(sig, terms) for key, terms in lam_terms.items()}
    mu = {key: BiForm(sig, terms) for key, terms in mu_terms.items()}
    lam = {key: value for key, value in lam.items() if not value.is_zero}
    mu = {key: value for key, value in mu.items() if not value.is_zero}
    certificate = ReductionCertificate(system, current, lam, mu, steps, scalar=scalar)
    if steps:
        logger.debug(f'Reduced in {steps} steps using {len(lam)} equation and '
                     f'{len(mu)} contact multipliers')
        if certificate.reassemble() != a:
            raise RuntimeError('Reduction certificate does not reassemble to its input')
    return certificate


def _cross_pairs(system):
    for (b1, (lead1, _)), (b2, (lead2, _)) in itertools.combinations(
            enumerate(system.rules), 2):
        if lead1.dep == lead2.dep:
            yield b1, lead1, b2, lead2


def required_depth(system):
    """Depth at which every pair of rules meets at its first common derivative."""
    depths = [max(lcm.minus(l1.idx).order, lcm.minus(l2.idx).order)
              for _, l1, _, l2 in _cross_pairs(system)
              for lcm in [l1.idx.lcm(l2.idx)]]
    return max(depths, default=0)


def check_integrability(system, depth=DEFAULT_DEPTH):
    r"""
    Compare the cross-derivatives of rules with a common dependent variable.

    For two leads :math:`u^a_{I_1}` and :math:`u^a_{I_2}` every common
    derivative :math:`u^a_K` reachable with at most `depth` additional
    derivatives on both leads is computed along each rule and reduced.

    Parameters
    ----------
    system : OrthonomicSystem
    depth : int
        At least 1. Default: :data:`DEFAULT_DEPTH`.

    Returns
    -------
    CheckResult
        The witness is the pair ``(JetVar, JetPoly)`` of the common
        derivative and the difference of its two reductions.

    """
    if depth < 1:
        raise ValueError(f'The integrability depth must be at least 1, got {depth}')
    sig = system.signature
    needed = required_depth(system)
    if needed > depth:
        logger.warning(f'Integrability checked to depth {depth}, some rule pairs first '
                       f'meet at depth {needed}')
    for b1, lead1, b2, lead2 in _cross_pairs(system):
        lcm = lead1.idx.lcm(lead2.idx)
        base = max(lcm.minus(lead1.idx).order, lcm.minus(lead2.idx).order)
        for extra in range(depth - base + 1):
            for counts in itertools.product(range(extra + 1), repeat=sig.n):
                if sum(counts) != extra:
                    continue
                common = lcm.plus(MultiIndex(counts))
                first = JetPoly(sig, system.prolonged_rhs(b1, common.minus(lead1.idx)))
                second = JetPoly(sig, system.prolonged_rhs(b2, common.minus(lead2.idx)))
                difference = reduce(first - second, system).normal
                if not difference.is_zero:
                    witness = JetVar(lead1.dep, common)
                    logger.debug(f'Cross-derivatives disagree at {sig.symbol(witness)}')
                    return CheckResult(False, (witness, difference))
    return CheckResult(True, None)


def require_integrable(system, depth=DEFAULT_DEPTH):
    """
    Raise IntegrabilityError unless :func:`check_integrability` passes.

    Returns
    -------
    CheckResult
        The passed check.

    """
    result = check_integrability(system, depth)
    if not result.passed:
        var, difference = result.witness
        raise IntegrabilityError(
            f'The system is not integrable: the cross-derivatives at '
            f'{system.signature.symbol(var)} differ by {difference.expr}')
    return result


def _require_internal(form, system, what):
    if not system.is_internal(form):
        principal = sorted((v for v in form.jetvars() if system.classifier(v)),
                           key=JetVar.key)
        raise PreconditionError(f'{what} expects a form in internal coordinates, found '
                                f'the principal jet {system.signature.symbol(principal[0])}')


def onshell_dh(a, system):
    """
    Horizontal differential on the prolonged equation manifold.

    Parameters
    ----------
    a : BiForm
        In internal coordinates (parametric jets only).
    system : OrthonomicSystem

    Returns
    -------
    BiForm
        In internal coordinates.

    Raises
    ------
    PreconditionError
        If `a` contains a principal jet variable.

    """
    _require_internal(a, system, 'The on-shell horizontal differential')
    return reduce(d_h(a), system).normal


def onshell_dv(a, system):
    """Vertical differential on the prolonged equation manifold."""
    _require_internal(a, system, 'The on-shell vertical differential')
    return d_v(a)
