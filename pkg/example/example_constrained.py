"""
The ``example_constrained`` module compares two Lagrangians of particles
bound by a Lagrange multiplier. The session is one of the examples shipped
with the varbicolib.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging

from varbicolib.lagcmp import contains
from varbicolib.render import render_text
from varbicolib.session import load_example

logging.basicConfig(level="DEBUG")

session = load_example('constrained')
L, L2, EL = session['L'], session['L2'], session['EL']

logging.info(f'L = {render_text(L)}')
logging.info(f'L2 = {render_text(L2)}')

verdict = contains(L, L2, EL)
logging.info(f'''
    Euler-Lagrange equations of L2 vanish on those of L: {verdict.el_contained.passed}
    presymplectic currents: {verdict.omega_match}''')

logging.info('Done!')
