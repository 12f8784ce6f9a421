"""Verifier output: a pass carries a certificate, a fail a counterexample."""

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from .field import NonstdNum


@dataclass(frozen=True)
class Counterexample:
    player: Any
    infoset: Optional[str] = None
    state: Optional[str] = None
    #: what the player does there (action, or pure strategy in strategic form)
    played: Optional[str] = None
    deviation: Optional[str] = None
    shortfall: Optional[NonstdNum] = None


@dataclass(frozen=True)
class Certificate:
    tremble: Any = None
    eps: Optional[NonstdNum] = None
    belief: Any = None
    #: player -> LocalToGlobalCert
    bounds: Optional[Mapping] = None
    model: Any = None
    #: further route-specific values (kept small and exact)
    extra: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    concept: str
    route: str
    certificate: Optional[Certificate] = None
    counterexample: Optional[Counterexample] = None
    #: True when the check held only vacuously (e.g. an empty state space)
    degenerate: bool = False
    #: verdicts of the other routes that were cross-checked, by route name
    routes: Dict[str, "Verdict"] = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.certificate is not None):
            raise ValueError("a passing verdict needs a certificate and only a passing one")
        if self.passed == (self.counterexample is not None):
            raise ValueError("a failing verdict needs a counterexample and only a failing one")

    def __bool__(self):
        return self.passed
