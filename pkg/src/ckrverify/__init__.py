"""Exact verification of equilibrium refinements in finite games.

Probabilities and payoffs live in R(eps), the ordered field of rational
functions in one positive infinitesimal.  Each verifier checks a candidate
against a given tremble by a direct inequality route and, optionally, by an
epistemic route (rationality holding at every state of a model), and insists
the two agree.
"""

from .errors import *  # noqa: F401,F403
from .field import EPS, ONE, ZERO, NonstdNum, epsilon, from_poly, from_rational
from .game import (Chance, Decision, GameTree, History, InformationSet, StrategicGame, Terminal,
                   validate)
from .strategy import (BehavioralProfile, BehavioralStrategy, custom_tremble, monomial_tremble,
                       pure_profile, uniform_tremble)
from .verdict import Certificate, Counterexample, Verdict
from .verify import (check_correlated, check_nash, check_perfect, check_quasi_perfect,
                     check_sequential, rationalizable, search_tremble, witness_model)

__version__ = "0.1.0"
