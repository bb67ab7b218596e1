"""Case split I-IV of the unimodular equation Dx^2 y = q y."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional

from ..algebra.field import RatFunc
from .kovacic import (Case1Result, Case2Result, Case3Result, SplitQuadraticError, riccati_case1,
                      riccati_case3, riccati_quadratic, verify_riccati)
from .local import local_data

FINITE_GROUPS = {4: "A4", 6: "S4", 12: "A5"}


@dataclass
class CaseTag:
    kind: str  # "I" | "II" | "III" | "IV"
    solutions: List[RatFunc] = dc_field(default_factory=list)
    family_dim: int = 0
    quadratic: Optional[Case2Result] = None
    finite: Optional[Case3Result] = None
    complete: bool = True
    notes: List[str] = dc_field(default_factory=list)

    @property
    def u(self) -> Optional[RatFunc]:
        return self.solutions[0] if self.solutions else None

    @property
    def group_label(self) -> Optional[str]:
        return FINITE_GROUPS[self.finite.n] if self.finite else None


def classify_case(q: RatFunc) -> CaseTag:
    ld = local_data(q)
    c1: Case1Result = riccati_case1(q, ld)
    for u in c1.solutions:
        assert verify_riccati(u, q)
    if c1.solutions:
        return CaseTag("I", c1.solutions, c1.family_dim, complete=c1.complete, notes=c1.notes)
    try:
        c2 = riccati_quadratic(q, ld)
    except SplitQuadraticError as exc:
        # only reachable when the case-1 search was incomplete
        sols = [u for u in dict.fromkeys(exc.solutions) if verify_riccati(u, q)]
        return CaseTag("I", sols, 0, complete=False,
                       notes=c1.notes + ["rational Riccati solutions recovered from a split quadratic"])
    if c2 is not None:
        return CaseTag("II", quadratic=c2, complete=c1.complete, notes=c1.notes)
    c3 = riccati_case3(q, ld)
    if c3 is not None:
        return CaseTag("III", finite=c3, complete=c1.complete, notes=c1.notes)
    return CaseTag("IV", complete=c1.complete, notes=c1.notes)
