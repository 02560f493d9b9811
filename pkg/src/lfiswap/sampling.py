"""Seeded random propositional formulas and consequence instances."""

from __future__ import annotations

import random

from .syntax import And, Atom, Cons, Imp, Neg, Or

LETTERS = ("p", "q", "r")


def random_formula(rng: random.Random, letters=LETTERS, depth: int = 3):
    """A formula of connective depth at most ``depth`` over ``letters``."""
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(letters))
    r = rng.random()
    if r < 0.2:
        return Neg(random_formula(rng, letters, depth - 1))
    if r < 0.32:
        return Cons(random_formula(rng, letters, depth - 1))
    cls = rng.choice((And, Or, Imp))
    return cls(random_formula(rng, letters, depth - 1), random_formula(rng, letters, depth - 1))


def random_instance(rng: random.Random, letters=LETTERS, depth: int = 3, max_premises: int = 3):
    """``(premises, goal)`` with up to ``max_premises`` premises."""
    prem = [random_formula(rng, letters, depth) for _ in range(rng.randint(0, max_premises))]
    return prem, random_formula(rng, letters, depth)
