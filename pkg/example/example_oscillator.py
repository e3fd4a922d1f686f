"""
The ``example_oscillator`` module shows a simple usage of the varbicolib:
a Lagrangian of the harmonic oscillator is reconstructed from its
presymplectic current.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging

from varbicolib import BiForm, Modelchain, OrthonomicSystem, Signature, render_text
from varbicolib.lagcmp import equivalent_mod_boundary

logging.basicConfig(level="DEBUG")

# Definition of the jet bundle with time t and position u
sig = Signature(['t'], ['u'])
u, u_t, u_tt = sig.jet('u'), sig.jet('u', 't'), sig.jet('u', 't', 't')

# Definition of the equation u_tt = -u
osc = OrthonomicSystem(sig, [(u_tt, -sig.symbol(u))])

# Presymplectic current dv(u_t) /\ dv(u)
omega = BiForm(sig, {((), (u_t, u)): 1})

# Definition and run of the modelchain
mc = Modelchain(osc, omega).run_model()

logging.info(f'''
    L = {render_text(mc.result.lagrangian)}
    theta = {render_text(mc.result.theta)}
    EL = {render_text(mc.result.el)}''')

# The textbook Lagrangian differs by a total derivative
textbook = BiForm.volume(sig, (sig.symbol(u_t) ** 2 - sig.symbol(u) ** 2) / 2)
logging.info(f'Equivalent to (u_t^2 - u^2)/2: '
             f'{equivalent_mod_boundary(mc.result.lagrangian, textbook)}')

for name, passed in mc.invariants().items():
    logging.info(f'{name}: {passed}')

logging.info('Done!')
