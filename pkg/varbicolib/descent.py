"""
The ``descent`` module contains the reconstruction of a Lagrangian from a
presymplectic current that is compatible with a PDE system: the
compatibility check, the descent on the prolonged equation manifold with
the vertical homotopy, and the lift of the descended forms back to the jet
bundle with the multipliers relating the Euler-Lagrange expressions to the
equations.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging
from collections import namedtuple

from varbicolib.forms import BiForm, Grading, d_h, d_v, require_grading, vertical_homotopy
from varbicolib.jetcore import d_total_multi
from varbicolib.pdesys import DEFAULT_DEPTH, onshell_dh, reduce, require_integrable
from varbicolib.varcalc import PreconditionError, SourceForm, source_decompose

logger = logging.getLogger(__name__)


class IncompatibleCurrentError(ValueError):
    """Raised when a presymplectic current is not closed on the equations."""


Descent = namedtuple('Descent', ['theta_hat', 'lagrangian_hat'])


class CompatibilityReport(object):
    r"""
    Closure of a presymplectic current on the prolonged equation manifold.

    Attributes
    ----------
    omega : BiForm
        The current in internal coordinates.
    dh_closed : bool
        True iff :math:`d_h \hat\omega` reduces to zero.
    dv_closed : bool
        True iff :math:`d_v \hat\omega` reduces to zero.
    dh_certificate, dv_certificate : ReductionCertificate

    """

    def __init__(self, omega, dh_certificate, dv_certificate):
        self.omega = omega
        self.dh_certificate = dh_certificate
        self.dv_certificate = dv_certificate
        self.dh_closed = dh_certificate.is_zero
        self.dv_closed = dv_certificate.is_zero

    @property
    def compatible(self):
        return self.dh_closed and self.dv_closed


class ReconstructionResult(object):
    r"""
    Lagrangian reconstructed from a compatible presymplectic current.

    Attributes
    ----------
    lagrangian : BiForm
        Bidegree (n,0).
    theta : BiForm
        Presymplectic potential, bidegree (n-1,1).
    omega : BiForm
        Presymplectic current :math:`d_v \theta`, bidegree (n-1,2).
    el : SourceForm
        Euler-Lagrange form, satisfying :math:`d_v L = EL - d_h \theta`.
    multipliers : dict
        Maps ``(J, B)`` to a SourceForm :math:`\epsilon^{JB}` with
        :math:`EL_a = \sum f_{JB} \epsilon^{JB}_a`.
    theta_hat, lagrangian_hat : BiForm
        Descended forms in internal coordinates.
    certificate : ReductionCertificate
        Reduction of :math:`d_v \hat L + d_h \hat\theta`.

    Raises
    ------
    RuntimeError
        If one of the identities above does not hold.

    """

    def __init__(self, system, lagrangian, theta, el, multipliers,
                 theta_hat, lagrangian_hat, certificate):
        self.system = system
        self.lagrangian = lagrangian
        self.theta = theta
        self.omega = d_v(theta)
        self.el = el
        self.multipliers = multipliers
        self.theta_hat = theta_hat
        self.lagrangian_hat = lagrangian_hat
        self.certificate = certificate
        if d_v(lagrangian) != el.to_biform() - d_h(theta):
            raise RuntimeError('Reconstructed forms violate dv L = EL - dh theta')
        sig = system.signature
        combined = [0] * sig.m
        for (idx, rule), eps in multipliers.items():
            f = system.equation(idx, rule)
            for a in range(sig.m):
                combined[a] = combined[a] + f * eps.coeffs[a]
        if SourceForm(sig, combined) != el:
            raise RuntimeError('Multipliers do not reproduce the Euler-Lagrange form')

    def check(self, omega_hat):
        """
        Re-derive the defining properties of the reconstruction.

        Parameters
        ----------
        omega_hat : BiForm
            The current the reconstruction started from, in internal
            coordinates (shifted by the horizontal differential of the
            descent correction, if one was used).

        Returns
        -------
        dict
            Maps the name of each property to a bool.

        """
        return {
            'first_variation': d_v(self.lagrangian) == self.el.to_biform() - d_h(self.theta),
            'current': d_v(self.theta) == self.omega,
            'el_on_shell': all(reduce(c, self.system).normal.is_zero for c in self.el.coeffs),
            'omega_on_shell': reduce(self.omega, self.system).normal == omega_hat,
        }


def check_compatibility(omega_hat, system, depth=DEFAULT_DEPTH):
    """
    Check that a presymplectic current is closed on the prolonged equations.

    Parameters
    ----------
    omega_hat : BiForm
        Bidegree (n-1,2). Principal jet variables are reduced away first.
    system : OrthonomicSystem
    depth : int or None
        Depth of the integrability check. Default: :data:`DEFAULT_DEPTH`.
        None skips the check for a system that has already passed it.

    Returns
    -------
    CompatibilityReport

    Raises
    ------
    GradingError
        If `omega_hat` is not of bidegree (n-1,2).
    IntegrabilityError
        If `system` fails the integrability check.

    """
    sig = system.signature
    require_grading(omega_hat, Grading(sig.n - 1, 2), 'presymplectic current')
    if depth is not None:
        require_integrable(system, depth)
    if not system.is_internal(omega_hat):
        logger.info('Presymplectic current given off-shell, reducing it first')
        omega_hat = reduce(omega_hat, system).normal
    report = CompatibilityReport(omega_hat, reduce(d_h(omega_hat), system),
                                 reduce(d_v(omega_hat), system))
    logger.debug(f'Compatibility: dh closed {report.dh_closed}, '
                 f'dv closed {report.dv_closed}')
    return report


def descend(omega_hat, system, rho_hat=None, depth=DEFAULT_DEPTH, report=None):
    r"""
    Descend a compatible current to a potential and a Lagrangian on-shell.

    .. math:: \hat\theta = h_v(\hat\omega - d_h^E \hat\rho), \qquad
              \hat L = h_v(-d_h^E \hat\theta)

    All components of higher vertical degree are chosen zero.

    Parameters
    ----------
    omega_hat : BiForm
        Compatible current of bidegree (n-1,2).
    system : OrthonomicSystem
    rho_hat : BiForm, optional
        Internal form of bidegree (n-2,2) with vanishing vertical
        differential, whose on-shell horizontal differential is removed
        from `omega_hat` before descending.
    depth : int
        Depth of the integrability check.
    report : CompatibilityReport, optional
        Result of :func:`check_compatibility` for `omega_hat`; computed when
        not given.

    Returns
    -------
    Descent
        The internal forms ``theta_hat`` (n-1,1) and ``lagrangian_hat`` (n,0).

    Raises
    ------
    IncompatibleCurrentError
        If `omega_hat` is not closed on the equations.

    """
    sig = system.signature
    if report is None:
        report = check_compatibility(omega_hat, system, depth)
    if not report.compatible:
        raise IncompatibleCurrentError(
            f'The presymplectic current is not compatible with the system '
            f'(dh closed: {report.dh_closed}, dv closed: {report.dv_closed})')
    target = report.omega
    if rho_hat is not None and not rho_hat.is_zero:
        if sig.n < 2:
            raise PreconditionError('A descent correction of bidegree (n-2,2) '
                                    'needs at least two independent variables')
        require_grading(rho_hat, Grading(sig.n - 2, 2), 'descent correction')
        if not d_v(rho_hat).is_zero:
            raise PreconditionError('The descent correction must have vanishing '
                                    'vertical differential')
        target = target - onshell_dh(rho_hat, system)

    theta_hat = vertical_homotopy(target)
    if d_v(theta_hat) != target:
        raise RuntimeError('Vertical homotopy failed to invert the current')
    dh_theta = onshell_dh(theta_hat, system)
    lagrangian_hat = vertical_homotopy(-dh_theta)
    if d_v(lagrangian_hat) != -dh_theta:
        raise RuntimeError('Vertical homotopy failed to invert the on-shell '
                           'horizontal differential of the potential')
    return Descent(theta_hat, lagrangian_hat)


def _multipliers(system, certificate):
    """Coefficients of the Euler-Lagrange form along the prolonged equations."""
    sig = system.signature
    sign = (-1) ** sig.n
    eps = {}
    for key in set(certificate.lam) | set(certificate.mu):
        idx, rule = key
        kappa = (certificate.lam.get(key, BiForm.zero(sig)) -
                 d_v(certificate.mu.get(key, BiForm.zero(sig))))
        for (_, (var,)), coeff in kappa.items():
            order_sign = (-1) ** var.order
            for sub in var.idx.sub_indices():
                value = (sign * order_sign * var.idx.binomial(sub) *
                         d_total_multi(sig, coeff, var.idx.minus(sub)))
                target = eps.setdefault((idx.plus(sub), rule), [0] * sig.m)
                target[var.dep] += value
    multipliers = {key: SourceForm(sig, values) for key, values in eps.items()}
    return {key: value for key, value in sorted(
        multipliers.items(), key=lambda item: (item[0][1], item[0][0].key()))
        if not value.is_zero}


def lift_and_assemble(theta_hat, lagrangian_hat, system):
    r"""
    Lift descended forms off-shell and assemble the variational data.

    The forms are reused verbatim on the jet bundle. The reduction of
    :math:`\Delta = d_v \hat L + d_h \hat\theta` yields multipliers
    :math:`\mu^{JB}`, the Lagrangian is :math:`L = \hat L - \sum f_{JB}
    \mu^{JB}` and integrating :math:`d_v L + d_h \hat\theta` by parts gives
    the Euler-Lagrange form and the correction of the potential.

    Parameters
    ----------
    theta_hat : BiForm
    lagrangian_hat : BiForm
    system : OrthonomicSystem

    Returns
    -------
    ReconstructionResult

    Raises
    ------
    RuntimeError
        If :math:`\Delta` does not reduce to zero.

    """
    certificate = reduce(d_v(lagrangian_hat) + d_h(theta_hat), system)
    if not certificate.is_zero:
        raise RuntimeError('The lifted descent equations do not reduce to zero')
    lagrangian = lagrangian_hat
    for (idx, rule), value in certificate.mu.items():
        lagrangian = lagrangian - system.equation(idx, rule) * value
    el, sigma = source_decompose(d_v(lagrangian) + d_h(theta_hat))
    theta = theta_hat + sigma
    multipliers = _multipliers(system, certificate)
    logger.debug(f'Assembled Lagrangian of order {lagrangian.order} with '
                 f'{len(multipliers)} multipliers')
    return ReconstructionResult(system, lagrangian, theta, el, multipliers,
                                theta_hat, lagrangian_hat, certificate)


def reconstruct(omega_hat, system, rho_hat=None, depth=DEFAULT_DEPTH):
    """
    Reconstruct a Lagrangian from a compatible presymplectic current.

    Composition of :func:`descend` and :func:`lift_and_assemble`.

    Examples
    --------
    >>> from varbicolib.jetcore import Signature
    >>> from varbicolib.pdesys import OrthonomicSystem
    >>> sig = Signature(['t'], ['u'])
    >>> u, u_t, u_tt = sig.jet('u'), sig.jet('u', 't'), sig.jet('u', 't', 't')
    >>> osc = OrthonomicSystem(sig, [(u_tt, -sig.symbol(u))])
    >>> omega = BiForm(sig, {((), (u_t, u)): 1})
    >>> reconstruct(omega, osc).el
    SourceForm([-u - u_t_t])

    """
    theta_hat, lagrangian_hat = descend(omega_hat, system, rho_hat, depth)
    return lift_and_assemble(theta_hat, lagrangian_hat, system)
