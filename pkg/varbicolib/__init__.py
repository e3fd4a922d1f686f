__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"
__version__ = '0.1'

from .jetcore import JetPoly, JetVar, MultiIndex, Signature
from .forms import BiForm, Grading, wedge, d_h, d_v, vertical_homotopy
from .varcalc import SourceForm, first_variation, euler_operator, helmholtz_check
from .pdesys import OrthonomicSystem, reduce, check_integrability
from .descent import reconstruct
from .lagcmp import contains
from .modelchain import Modelchain
from .dsl import parse_session
from .render import render, render_text, render_latex, to_json
