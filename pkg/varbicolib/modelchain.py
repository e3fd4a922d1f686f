"""
The ``modelchain`` module contains the reconstruction pipeline of the
varbicolib as a single object. This module makes it easy to get started
with the varbicolib and demonstrates the standard order of the steps.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging

from varbicolib import descent
from varbicolib.pdesys import DEFAULT_DEPTH, onshell_dh, require_integrable, required_depth

logger = logging.getLogger(__name__)


class Modelchain(object):
    r"""Model to reconstruct a Lagrangian from a presymplectic current

    Parameters
    ----------
    system : OrthonomicSystem
        A :class:`~.pdesys.OrthonomicSystem` describing the PDE system.
    omega_hat : BiForm
        Presymplectic current of bidegree (n-1,2), on-shell or off-shell.
    rho_hat : BiForm, optional
        Descent correction of bidegree (n-2,2), see :func:`~.descent.descend`.
    depth : int
        Depth of the integrability check. Default: :data:`~.pdesys.DEFAULT_DEPTH`.

    Attributes
    ----------
    system : OrthonomicSystem
    omega_hat : BiForm
    rho_hat : BiForm or None
    depth : int
    integrability : CheckResult
        Filled by :meth:`run_model`.
    report : CompatibilityReport
        Filled by :meth:`run_model`.
    theta_hat : BiForm
        Descended potential in internal coordinates, filled by :meth:`run_model`.
    lagrangian_hat : BiForm
        Descended Lagrangian in internal coordinates, filled by :meth:`run_model`.
    result : ReconstructionResult
        Filled by :meth:`run_model`.

    Examples
    --------
    >>> from varbicolib import BiForm, OrthonomicSystem, Signature
    >>> sig = Signature(['t'], ['u'])
    >>> u, u_t, u_tt = sig.jet('u'), sig.jet('u', 't'), sig.jet('u', 't', 't')
    >>> osc = OrthonomicSystem(sig, [(u_tt, -sig.symbol(u))])
    >>> mc = Modelchain(osc, BiForm(sig, {((), (u_t, u)): 1})).run_model()
    >>> mc.lagrangian_hat.is_zero
    True

    """

    def __init__(self, system, omega_hat, rho_hat=None, depth=DEFAULT_DEPTH):

        self.system = system
        self.omega_hat = omega_hat
        self.rho_hat = rho_hat
        self.depth = depth

        self.integrability = None
        self.report = None
        self.theta_hat = None
        self.lagrangian_hat = None
        self.result = None

    def run_model(self):
        r"""
        Runs the pipeline and fills the attributes of the intermediate steps

        Returns
        -------
        self : Modelchain

        Raises
        ------
        IntegrabilityError
            If the system fails the integrability check.
        IncompatibleCurrentError
            If the current is not closed on the equations.

        """
        self.integrability = require_integrable(self.system, self.depth)
        self.report = descent.check_compatibility(self.omega_hat, self.system, depth=None)
        if not self.report.compatible:
            logger.error('Presymplectic current is not compatible with the system')
        self.theta_hat, self.lagrangian_hat = descent.descend(
            self.omega_hat, self.system, self.rho_hat, report=self.report)
        self.result = descent.lift_and_assemble(self.theta_hat, self.lagrangian_hat,
                                                self.system)

        logger.debug(f'''Reconstruction finished:
        rules: {len(self.system)}
        integrability depth: {self.depth} (required {required_depth(self.system)})
        Lagrangian order: {self.result.lagrangian.order}
        multipliers: {len(self.result.multipliers)}''')
        return self

    def invariants(self):
        """
        Defining properties of the finished reconstruction.

        Returns
        -------
        dict
            See :meth:`~.descent.ReconstructionResult.check`.

        """
        if self.result is None:
            raise RuntimeError('run_model has to be called first')
        target = self.report.omega
        if self.rho_hat is not None and not self.rho_hat.is_zero:
            target = target - onshell_dh(self.rho_hat, self.system)
        return self.result.check(target)
