"""
The ``sampling`` module contains generators of random polynomials, forms
and polynomial sections with small integer coefficients, used to check
identities of the bicomplex on many inputs.

"""

__copyright__ = "Copyright varbicolib developer group"
__license__ = "GPLv3"

import itertools
import logging

import numpy as np
import sympy

from varbicolib.forms import BiForm
from varbicolib.jetcore import JetPoly, JetVar, MultiIndex

logger = logging.getLogger(__name__)


def jet_variables(signature, order):
    """All jet variables up to the given order, in canonical order."""
    found = []
    for total in range(order + 1):
        for counts in itertools.product(range(total + 1), repeat=signature.n):
            if sum(counts) == total:
                found.extend(JetVar(a, MultiIndex(counts)) for a in range(signature.m))
    return sorted(found, key=JetVar.key)


def _coefficient(rng, low=-3, high=3):
    value = 0
    while value == 0:
        value = int(rng.integers(low, high + 1))
    return value


def random_poly(signature, rng, order=2, degree=2, terms=3, independent=True):
    """
    Random polynomial in the jet variables.

    Parameters
    ----------
    signature : Signature
    rng : numpy.random.Generator
    order : int
        Maximal jet order. Default: 2.
    degree : int
        Maximal degree of each monomial. Default: 2.
    terms : int
        Number of monomials drawn. Default: 3.
    independent : bool
        Whether independent variables may occur. Default: True.

    Returns
    -------
    JetPoly

    """
    symbols = [signature.symbol(var) for var in jet_variables(signature, order)]
    if independent:
        symbols += [signature.x(i) for i in range(signature.n)]
    expr = 0
    for _ in range(terms):
        size = int(rng.integers(0, degree + 1))
        factors = [symbols[int(k)] for k in rng.integers(0, len(symbols), size=size)]
        expr += _coefficient(rng) * sympy.Mul(*factors)
    return JetPoly(signature, expr)


def random_form(signature, rng, grading, order=2, degree=2, terms=3):
    """
    Random homogeneous form of the given bidegree.

    Returns
    -------
    BiForm
        Generators are drawn among the jet variables up to `order`; the
        coefficients are random polynomials of degree at most `degree`.

    """
    h, v = grading
    jets = jet_variables(signature, order)
    hsets = list(itertools.combinations(range(signature.n), h))
    vsets = list(itertools.combinations(jets, v))
    result = {}
    for _ in range(terms):
        hgen = hsets[int(rng.integers(0, len(hsets)))]
        vgen = vsets[int(rng.integers(0, len(vsets)))]
        coeff = random_poly(signature, rng, order, degree, terms=2)
        result[(hgen, vgen)] = result.get((hgen, vgen), 0) + coeff.expr
    return BiForm(signature, result)


def random_lagrangian(signature, rng, order=1, degree=3, terms=4):
    """Random Lagrangian of bidegree (n,0)."""
    return BiForm.volume(signature, random_poly(signature, rng, order, degree, terms).expr)


def random_section(signature, rng, degree=3, terms=3):
    """Random polynomial section, mapping each dependent variable name to a polynomial."""
    xs = [signature.x(i) for i in range(signature.n)]
    section = {}
    for name in signature.dep:
        expr = 0
        for _ in range(terms):
            size = int(rng.integers(0, degree + 1))
            expr += _coefficient(rng) * sympy.Mul(*[xs[int(k)] for k in
                                                    rng.integers(0, len(xs), size=size)])
        section[name] = expr
    return section


def default_rng(seed=None):
    """Numpy random generator used by the property checks."""
    return np.random.default_rng(seed)
