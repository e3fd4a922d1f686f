"""
The ``session`` module contains functions to load the example sessions
shipped with the varbicolib.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import logging
from importlib import resources

from varbicolib.dsl import parse_session

logger = logging.getLogger(__name__)

SUFFIX = '.vbc'


def list_examples():
    """Names of the bundled example sessions, sorted."""
    files = resources.files('varbicolib').joinpath('data').iterdir()
    return sorted(f.name[:-len(SUFFIX)] for f in files if f.name.endswith(SUFFIX))


def example_text(name):
    r"""
    Text of a bundled example session.

    Parameters
    ----------
    name : str
        Name of the session, for example ``'oscillator'``. See
        :func:`list_examples`.

    Returns
    -------
    str

    Raises
    ------
    KeyError
        If there is no session of that name.

    """
    available = list_examples()
    if name not in available:
        raise KeyError(f"No example session named {name}. Available sessions: "
                       f"{', '.join(available)}")
    logger.debug(f'Loading example session {name}')
    return resources.files('varbicolib').joinpath('data').joinpath(name + SUFFIX).read_text(
        encoding='utf-8')


def load_example(name):
    """
    Parse a bundled example session.

    Examples
    --------
    >>> session = load_example('oscillator')
    >>> [command.verb for command in session.commands][:2]
    ['checkomega', 'reconstruct']

    """
    return parse_session(example_text(name))
