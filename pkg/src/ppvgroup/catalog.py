"""Built-in input documents."""

from __future__ import annotations

import copy
from typing import Any, Dict

_HYP = "(1-{l}^2)/(4*x^2) + (1-{m}^2)/(4*(x-1)^2) + ({l}^2+{m}^2-{n}^2-1)/(4*x*(x-1))"

EXAMPLES: Dict[str, Dict[str, Any]] = {
    # the two-parameter worked example; the 1/x^2 numerator of a0 is (t2-2*t1)*(t2-1)
    "two-param": {
        "parameters": ["t1", "t2"],
        "equation": {
            "a1": "-2*((t1-t2)/x + t2/(x-1))",
            "a0": "((t2-2*t1)*(t2-1) + 2*(t1-t2)^2*x)/x^2"
                  " + (t1*(2*t2-t1+1) - 2*(t1-t2)^2*(x-1))/(x-1)^2",
        },
        "options": {"max_theta_order": 3, "finite_order_bound": 64, "lattice_search_bound": 25},
    },
    # the same coefficients with (t1-2*t2)*(t2-1) as printed in the source
    "two-param-as-printed": {
        "parameters": ["t1", "t2"],
        "equation": {
            "a1": "-2*((t1-t2)/x + t2/(x-1))",
            "a0": "((t1-2*t2)*(t2-1) + 2*(t1-t2)^2*x)/x^2"
                  " + (t1*(2*t2-t1+1) - 2*(t1-t2)^2*(x-1))/(x-1)^2",
        },
    },
    "airy": {"parameters": [], "equation": {"a1": "0", "a0": "-x"}},
    "euler": {"parameters": [], "equation": {"a1": "0", "a0": "-2/x^2"}},
    "dihedral": {"parameters": [], "equation": {"a1": "0", "a0": "-(1/x - 3/(16*x^2))"}},
    "tetrahedral": {"parameters": [], "equation": {"a1": "0", "a0": _HYP.format(l="(1/2)", m="(1/3)", n="(1/3)")}},
    "octahedral": {"parameters": [], "equation": {"a1": "0", "a0": _HYP.format(l="(1/2)", m="(1/3)", n="(1/4)")}},
    "icosahedral": {"parameters": [], "equation": {"a1": "0", "a0": _HYP.format(l="(1/2)", m="(1/3)", n="(1/5)")}},
    "bessel": {"parameters": ["t1"], "equation": {"a1": "1/x", "a0": "1 - t1^2/x^2"}},
}


def example(name: str) -> Dict[str, Any]:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(sorted(EXAMPLES))}")
    return copy.deepcopy(EXAMPLES[name])
