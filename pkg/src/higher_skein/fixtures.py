"""Shipped link fixtures and a seeded generator of small random diagrams."""

from __future__ import annotations

import random

from .diagram import DATA_DIR, NEGATIVE, POSITIVE, braid_closure, load_diagram

CLASSICAL = ("unknot", "unlink2", "unlink3", "hopf_pos", "hopf_neg", "trefoil", "figure8")


def link_path(name):
    return DATA_DIR / "links" / f"{name}.link"


def load_link(name):
    path = link_path(name)
    if not path.exists():
        raise KeyError(f"no fixture named {name!r}")
    return load_diagram(path)


def classical_fixtures():
    return {name: load_link(name) for name in CLASSICAL}


def load_G(l, n):
    return load_diagram(DATA_DIR / "G" / f"G{l}_{n}.link")


def random_diagram(rng, max_crossings=8, max_strands=4):
    """Closure of a random braid word.

    Braid closures are planar by construction, so descending diagrams among
    them really are unlinks.  Words may be empty (an unlink of strands).
    """
    strands = rng.randint(1, max_strands)
    if strands == 1:
        return braid_closure([], 1)
    length = rng.randint(0, max_crossings)
    word = [(rng.randint(1, strands - 1), rng.choice((POSITIVE, NEGATIVE))) for _ in range(length)]
    return braid_closure(word, strands)


def random_diagrams(count, seed=0, max_crossings=8, max_strands=4):
    rng = random.Random(seed)
    return [random_diagram(rng, max_crossings, max_strands) for _ in range(count)]
