"""Shared fixtures: small graded modules over the four test groups."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gfrob import (
    GradedModule,
    Tensor,
    cyclic_group,
    graded_module,
    symmetric_group,
    trivial_group,
)
from gfrob.groups import perm_index
from gfrob.linalg import identity
from gfrob.singularity import z2_frobenius_algebra


def diag(entries):
    n = len(entries)
    return [[Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def orbifold_module():
    """dim 4, degrees (e,e,e,g), involution diag(1,1,-1,1)."""
    return z2_frobenius_algebra(3).module


def make_z3_module():
    """dim 4 over Z/3Z: 2-dim untwisted rotation block plus two twisted lines."""
    g = cyclic_group(3)
    rot = [
        [Fraction(0), Fraction(-1), Fraction(0), Fraction(0)],
        [Fraction(1), Fraction(-1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
    ]
    rot2 = [
        [Fraction(-1), Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(-1), Fraction(0), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
    ]
    return graded_module(g, (0, 0, 1, 2), [identity(4), rot, rot2])


def make_s3_module(sign_twist: bool = False):
    """dim 4 over S_3: one untwisted line plus the three transposition lines."""
    g = symmetric_group(3)
    trans = [perm_index(3, p) for p in ((1, 0, 2), (2, 1, 0), (0, 2, 1))]
    degrees = (g.identity, trans[0], trans[1], trans[2])
    slot = {d: i for i, d in enumerate(degrees)}
    sign = {}
    for a in g.elements():
        sign[a] = 1
    for p in trans:
        sign[p] = -1
    # sign of each element: transpositions and their products
    perms = sorted(__import__("itertools").permutations(range(3)))
    def parity(p):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        return -1 if inv % 2 else 1
    action = []
    for gamma in g.elements():
        m = [[Fraction(0)] * 4 for _ in range(4)]
        s = parity(perms[gamma]) if sign_twist else 1
        m[0][0] = Fraction(s)
        for d in trans:
            target = g.conj(gamma, d)
            m[slot[target]][slot[d]] = Fraction(s)
        action.append(m)
    return graded_module(g, degrees, action)


@pytest.fixture(scope="session")
def z3_module():
    return make_z3_module()


@pytest.fixture(scope="session")
def s3_module():
    return make_s3_module()


@pytest.fixture(scope="session")
def s3_module_twisted():
    return make_s3_module(sign_twist=True)


@pytest.fixture(scope="session")
def trivial_modules():
    g = trivial_group()
    return [
        GradedModule(g, (0,), (identity(1),)),
        GradedModule(g, (0, 0, 0), (identity(3),)),
    ]


def random_tensor(rng: random.Random, h: GradedModule, n: int, terms: int = 3) -> Tensor:
    out = {}
    for _ in range(terms):
        idx = tuple(rng.randrange(h.dim) for _ in range(n))
        out[idx] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Tensor(n, out)
