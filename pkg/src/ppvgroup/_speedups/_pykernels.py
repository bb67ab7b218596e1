"""Pure-Python sparse polynomial kernels.

Polynomials are ``dict`` objects mapping a packed monomial (a Python ``int``
whose bit fields hold the exponents plus the total degree) to a nonzero
integer coefficient.  Packing is additive, so monomial multiplication is
integer addition and monomial comparison is integer comparison.
"""

from __future__ import annotations

BACKEND = "python"


def add(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    get = out.get
    for k, c in b.items():
        s = get(k, 0) + c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def sub(a: dict, b: dict) -> dict:
    out = dict(a)
    get = out.get
    for k, c in b.items():
        s = get(k, 0) - c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def scale(a: dict, c: int) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        (kb, cb), = b.items()
        return {k + kb: c * cb for k, c in a.items()}
    out: dict = {}
    get = out.get
    bi = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bi:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def divexact(a: dict, b: dict, guard: int):
    """Return ``a / b`` if ``b`` divides ``a`` exactly, else ``None``.

    ``guard`` has the top bit of every exponent field set; a monomial
    difference with any guard bit set signals a borrow, i.e. non-divisibility.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    lb = max(b)
    cb = b[lb]
    if len(b) == 1:
        out = {}
        for k, c in a.items():
            d = k - lb
            if d < 0 or d & guard:
                return None
            q, r = divmod(c, cb)
            if r:
                return None
            out[d] = q
        return out
    rest = [(k, c) for k, c in b.items() if k != lb]
    rem = dict(a)
    out = {}
    get = rem.get
    while rem:
        lr = max(rem)
        cr = rem[lr]
        d = lr - lb
        if d < 0 or d & guard:
            return None
        q, r = divmod(cr, cb)
        if r:
            return None
        out[d] = q
        del rem[lr]
        for k, c in rest:
            kk = k + d
            s = get(kk, 0) - c * q
            if s:
                rem[kk] = s
            else:
                rem.pop(kk, None)
    return out
