"""The integer lattice of joint logarithmic-derivative relations.

For g_1..g_n in K we want every k in Z^n with sum k_i g_i = Dx(f)/f.  With
D the common denominator and Dsf its squarefree part the conditions are:

* the sum is proper with at most simple poles (Q-linear in k);
* its residue function rho_k = sum k_i rho_i, an element of F0[x]/(Dsf), has
  constant values at the roots of Dsf, i.e. each parametric derivative of the
  residue vanishes (Q-linear in k);
* those constant values are integers.  A random element of the space left by
  the first two steps separates the roots, and on each factor of its
  resultant every residue function is a polynomial in the separating one
  with rational coefficients.  Integrality then becomes a congruence system
  solved with integer kernels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm as ilcm
from typing import Dict, List, Optional, Sequence

from ..algebra.field import FunctionField, RatFunc
from ..algebra.introots import factor_q
from ..algebra.linalg import hnf, integer_kernel, solve_linear_system
from ..algebra.poly import lcm
from ..algebra.upoly import UPoly, split_ratfunc, squarefree_part, upoly_gcd, upoly_xgcd
from .residues import is_log_derivative, rt_resultant

LAMBDA_TRIES = 24


@dataclass(frozen=True)
class LogDerLattice:
    generators: List[List[int]]
    witnesses: List[RatFunc]

    def contains(self, k: Sequence[int]) -> bool:
        if not any(k):
            return True
        if not self.generators:
            return False
        n = len(k)
        s = len(self.generators)
        # k is in the lattice iff some kernel vector of [G | -k] ends in 1
        M = [[self.generators[b][i] for b in range(s)] + [-k[i]] for i in range(n)]
        g = 0
        for v in integer_kernel(M, s + 1):
            g = gcd(g, v[-1])
        return g == 1


def _q_rows(field: FunctionField, cols: List[List[RatFunc]]) -> List[List[int]]:
    """Integer rows equivalent to the F0-equations given column-wise.

    ``cols[i][r]`` is the coefficient of k_i in equation r.  Each equation is
    scaled to Z[t] and split into one equation per t-monomial.
    """
    n = len(cols)
    if n == 0:
        return []
    nrows = len(cols[0])
    out: List[List[int]] = []
    R = field.ring
    for r in range(nrows):
        entries = [cols[i][r] for i in range(n)]
        if all(e.is_zero for e in entries):
            continue
        L = R.one
        for e in entries:
            if not e.is_zero:
                L = lcm(L, e.den)
        split: Dict[int, List[int]] = {}
        for i, e in enumerate(entries):
            if e.is_zero:
                continue
            num = e.num * L.exact_div(e.den)
            for key, c in num.terms.items():
                split.setdefault(key, [0] * n)[i] = c
        out.extend(split[k] for k in sorted(split))
    return out


def _coeff_cols(polys: Sequence[UPoly], width: int) -> List[List[RatFunc]]:
    return [[p.coeff(e) for e in range(width)] for p in polys]


def _horner_mod(coeffs: Sequence[Fraction], v: UPoly, mod: UPoly) -> UPoly:
    fld = v.field
    acc = UPoly.zero(fld)
    for c in reversed(coeffs):
        acc = (acc * v + UPoly.const(fld, c)) % mod
    return acc


def _fit(powers: List[UPoly], target: UPoly, P: UPoly) -> Optional[List[Fraction]]:
    """Rational a with sum a_e powers[e] = target mod P, or None."""
    fld = P.field
    d = len(powers)
    width = P.deg()
    A = [[powers[e].coeff(r) for e in range(d)] for r in range(width)]
    b = [target.coeff(r) for r in range(width)]
    sol = solve_linear_system(A, b, d, fld.zero)
    if not sol.consistent or sol.kernel:
        return None
    if not all(a.is_rational for a in sol.particular):
        return None
    return [a.to_fraction() for a in sol.particular]


def _ints(row: Sequence[Fraction]) -> List[int]:
    den = 1
    for v in row:
        den = ilcm(den, Fraction(v).denominator)
    return [int(Fraction(v) * den) for v in row]


def log_derivative_lattice(gs: Sequence[RatFunc], seed: int = 0) -> LogDerLattice:
    gs = list(gs)
    if not gs:
        raise ValueError("empty family")
    fld = gs[0].field
    n = len(gs)
    R = fld.ring
    Lden = R.one
    for g in gs:
        if not g.is_zero:
            Lden = lcm(Lden, g.den)
    D = UPoly.from_poly(fld, Lden).monic()
    polys: List[UPoly] = []
    nums: List[UPoly] = []
    for g in gs:
        if g.is_zero:
            polys.append(UPoly.zero(fld))
            nums.append(UPoly.zero(fld))
            continue
        a, d = split_ratfunc(g)
        full = a * D.exact_quo(d)
        p, r = full.divmod(D)
        polys.append(p)
        nums.append(r)
    Dsf = squarefree_part(D)
    # (a) no polynomial part, no multiple poles
    width_p = max((p.deg() + 1 for p in polys), default=0)
    cols = _coeff_cols(polys, width_p)
    multi = [(N * Dsf) % D for N in nums]
    width_m = D.deg()
    cols = [c + m for c, m in zip(cols, _coeff_cols(multi, width_m))]
    rows = _q_rows(fld, cols)
    rhos: List[UPoly] = []
    if Dsf.deg() > 0:
        Q = [(N * Dsf).divmod(D)[0] for N in nums]
        dDsf = Dsf.diff()
        _, inv, _ = upoly_xgcd(dDsf, Dsf)
        rhos = [(q * inv) % Dsf for q in Q]
        # (b) the residues must be annihilated by every parametric derivation
        tcols: List[List[RatFunc]] = [[] for _ in range(n)]
        for j in range(1, fld.m + 1):
            dj = Dsf.dt(j)
            corr = (dj * inv) % Dsf
            for i, rho in enumerate(rhos):
                t = (rho.dt(j) - rho.diff() * corr) % Dsf
                tcols[i].extend(t.coeff(e) for e in range(Dsf.deg()))
        rows += _q_rows(fld, tcols)
    V = integer_kernel(rows, n) if rows else [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if not V or Dsf.deg() == 0:
        gens = hnf(V)
        return LogDerLattice(gens, _witnesses(gs, gens))
    gens = _integrality(fld, V, rhos, Dsf, seed)
    return LogDerLattice(gens, _witnesses(gs, gens))


def _integrality(fld: FunctionField, V: List[List[int]], rhos: List[UPoly], Dsf: UPoly,
                 seed: int) -> List[List[int]]:
    s = len(V)
    rho_v = []
    for vec in V:
        acc = UPoly.zero(fld)
        for ki, rho in zip(vec, rhos):
            if ki:
                acc = acc + rho.scale(fld.const(ki))
        rho_v.append(acc % Dsf)
    dDsf = Dsf.diff()
    rng = random.Random(seed)
    for attempt in range(LAMBDA_TRIES):
        bound = 3 + 4 * attempt
        lam = [rng.randint(-bound, bound) for _ in range(s)]
        if attempt == 0 and s == 1:
            lam = [1]
        if not any(lam):
            continue
        rho_l = UPoly.zero(fld)
        for c, r in zip(lam, rho_v):
            if c:
                rho_l = rho_l + r.scale(fld.const(c))
        A = (rho_l * dDsf) % Dsf
        Rz = rt_resultant(A, Dsf).monic()
        if not all(c.is_rational for c in Rz.c):
            raise AssertionError("residues are not constant after the derivation step")
        eq_rows: List[List[int]] = []
        int_rows: List[List[Fraction]] = []
        ok = True
        for r in factor_q([c.to_fraction() for c in Rz.c]):
            d = len(r) - 1
            P = upoly_gcd(Dsf, _horner_mod(r, rho_l, Dsf))
            if P.deg() <= 0:
                ok = False
                break
            pw = [UPoly.one(fld) % P]
            for _ in range(d - 1):
                pw.append((pw[-1] * rho_l) % P)
            table = []
            for b in range(s):
                a = _fit(pw, rho_v[b] % P, P)
                if a is None:
                    ok = False
                    break
                table.append(a)
            if not ok:
                break
            for e in range(1, d):
                row = [table[b][e] for b in range(s)]
                if any(row):
                    eq_rows.append(_ints(row))
            row0 = [table[b][0] for b in range(s)]
            if any(row0):
                int_rows.append(row0)
        if not ok:
            continue
        # y in Z^s with eq_rows.y = 0 and each int_row.y in Z
        nint = len(int_rows)
        M = [row + [0] * nint for row in eq_rows]
        for r_i, row in enumerate(int_rows):
            den = 1
            for v in row:
                den = ilcm(den, v.denominator)
            ints = [int(v * den) for v in row]
            extra = [0] * nint
            extra[r_i] = -den
            M.append(ints + extra)
        if M:
            K = integer_kernel(M, s + nint)
            Y = [k[:s] for k in K]
        else:
            Y = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
        ks = []
        for y in Y:
            ks.append([sum(y[b] * V[b][i] for b in range(s)) for i in range(len(V[0]))])
        return hnf(ks)
    raise RuntimeError("could not separate residues with random combinations")


def _witnesses(gs: Sequence[RatFunc], gens: List[List[int]]) -> List[RatFunc]:
    out = []
    fld = gs[0].field
    for k in gens:
        h = fld.zero
        for ki, g in zip(k, gs):
            if ki:
                h = h + g * ki
        f = is_log_derivative(h)
        if f is None:
            raise AssertionError(f"lattice generator {k} is not a log-derivative relation")
        out.append(f)
    return out
