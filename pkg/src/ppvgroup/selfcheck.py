"""Built-in invariant suite run by ``ppvgroup selfcheck``."""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Callable, List, Tuple

from .algebra.diffop import DiffOperator, op_compose
from .algebra.field import FunctionField
from .calculus.exactness import is_exact
from .calculus.residues import is_log_derivative
from .catalog import example
from .engine.pipeline import run_pipeline, third_order_operator
from .io.parser import parse_ratfunc
from .io.report import load_input
from .testing import random_nonconstant, random_ratfunc, seeded

CORRUPT_ENV = "PPVGROUP_SELFCHECK_CORRUPT"


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = dc_field(default_factory=list)


def _third_order(rng, n: int, corrupt: bool) -> CheckResult:
    res = CheckResult("third-order factorization")
    fld = FunctionField(("t1",))
    for _ in range(n):
        r1 = random_ratfunc(fld, rng)
        r0 = random_ratfunc(fld, rng)
        q = r1 * r1 - r1.dx() - r0
        if q.is_zero:
            continue
        L = third_order_operator(r1, r0, q)
        left = DiffOperator(fld, [-(r1 + q.dx() / q), 1])
        right = DiffOperator(fld, [r0, -r1 * 2, 1])
        if corrupt:
            right = DiffOperator(fld, [r0 + 1, -r1 * 2, 1])
        _tally(res, op_compose(left, right) == L, f"r1={r1}, r0={r0}")
    return res


def _riccati_factor(rng, n: int) -> CheckResult:
    res = CheckResult("Riccati factorization")
    fld = FunctionField(("t1",))
    for _ in range(n):
        u = random_ratfunc(fld, rng)
        lhs = op_compose(DiffOperator(fld, [u, 1]), DiffOperator(fld, [-u, 1]))
        rhs = DiffOperator(fld, [-(u.dx() + u * u), 0, 1])
        _tally(res, lhs == rhs, f"u={u}")
    return res


def _round_trip(rng, n: int) -> CheckResult:
    res = CheckResult("parse/render round trip")
    fld = FunctionField(("t1", "t2"))
    for _ in range(n):
        f = random_ratfunc(fld, rng, deg=3)
        _tally(res, parse_ratfunc(str(f), fld) == f, str(f))
    return res


def _witnesses(rng, n: int) -> CheckResult:
    res = CheckResult("exactness and log-derivative witnesses")
    fld = FunctionField(("t1",))
    for _ in range(n):
        f = random_nonconstant(fld, rng)
        g = is_exact(f.dx())
        h = is_log_derivative(f.dx() / f)
        ok = g is not None and g.dx() == f.dx() and h is not None and h.dx() == h * (f.dx() / f)
        _tally(res, ok, f"f={f}")
    t1 = fld.t(1)
    _tally(res, is_exact(fld.x.inv()) is None, "1/x is not exact")
    _tally(res, is_log_derivative(t1 / fld.x) is None, "t1/x is not a log-derivative")
    return res


def _golden() -> CheckResult:
    res = CheckResult("worked example")
    fld, a1, a0, opts = load_input(example("two-param"))
    rep = run_pipeline(a1, a0, opts)
    x, t1, t2 = fld.x, fld.t(1), fld.t(2)
    _tally(res, rep.H.case.kind == "I", "case I")
    _tally(res, rep.H.case.u == t1 / x + (t1 - t2) / (x - 1), "u")
    _tally(res, rep.H.B.kind == "full", "B full")
    _tally(res, rep.coupling.kind == "MultMultCoupling" and len(rep.coupling.pairs) == 2, "coupling")
    return res


def _tally(res: CheckResult, ok: bool, what: str) -> None:
    if ok:
        res.passed += 1
    else:
        res.failed += 1
        res.failures.append(what)


def run_selfcheck(seed: int = 0, count: int = 20) -> List[CheckResult]:
    rng = seeded(seed)
    corrupt = bool(os.environ.get(CORRUPT_ENV))
    checks: List[Callable[[], CheckResult]] = [
        lambda: _third_order(rng, count, corrupt),
        lambda: _riccati_factor(rng, count),
        lambda: _round_trip(rng, count),
        lambda: _witnesses(rng, count),
        _golden,
    ]
    return [c() for c in checks]
