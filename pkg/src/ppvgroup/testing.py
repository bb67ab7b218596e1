"""Seeded random elements of K, shared by the self-check and the test-suite."""

from __future__ import annotations

import random
from typing import Optional

from .algebra.field import FunctionField, RatFunc


def random_poly(field: FunctionField, rng: random.Random, deg: int = 2, pdeg: int = 1,
                coeff: int = 5, terms: int = 3) -> RatFunc:
    acc = field.zero
    for _ in range(rng.randint(1, terms)):
        c = rng.randint(-coeff, coeff)
        if not c:
            continue
        mono = field.x ** rng.randint(0, deg)
        for j in range(1, field.m + 1):
            mono = mono * field.t(j) ** rng.randint(0, pdeg)
        acc = acc + mono * c
    return acc


def random_ratfunc(field: FunctionField, rng: random.Random, deg: int = 2, pdeg: int = 1,
                   coeff: int = 5, nonzero: bool = False) -> RatFunc:
    while True:
        num = random_poly(field, rng, deg, pdeg, coeff)
        den = random_poly(field, rng, deg, pdeg, coeff)
        if den.is_zero or (nonzero and num.is_zero):
            continue
        return num / den


def random_nonconstant(field: FunctionField, rng: random.Random, deg: int = 2, pdeg: int = 1,
                       coeff: int = 5) -> RatFunc:
    while True:
        f = random_ratfunc(field, rng, deg, pdeg, coeff, nonzero=True)
        if f.has_x:
            return f


def seeded(seed: Optional[int]) -> random.Random:
    return random.Random(0 if seed is None else seed)
