"""The braid groupoid on n-tuples of group elements.

The braid group acts on G^n by conjugate-and-swap: the generator b_i sends
(.., g_i, g_{i+1}, ..) to (.., g_i g_{i+1} g_i^{-1}, g_i, ..).  Each braid
word, applied at a concrete tuple, realizes an element of G^n x| S_n; these
realized pairs are the arrows of a finite groupoid whose objects are the
tuples.  Distinct braid words can realize the same arrow, and arrows are
compared by their (source, gpart, perm) triple alone.

Conventions fixed here and relied on everywhere else:

* an arrow (gpart, perm) acts on a tuple by conjugating componentwise first
  and then permuting slots, so slot perm[i] of the result comes from slot i;
* composition (a,sigma) o (b,tau) has perm sigma o tau and gpart
  c[j] = a[tau(j)] * b[j];
* generator indices are 1-based: b_i braids slots i and i+1 for
  1 <= i <= n-1.

Enumeration is breadth-first closure over generator arrows and their
inverses; it terminates because G^n x| S_n is finite.  Arrow counts satisfy
n_C = |C| * m_C with m_C the constant hom-set size, and every component has
a constant G-degree (the ordered product of the tuple entries).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import factorial

from .errors import IndexOutOfRange, SizeLimit, SourceTargetMismatch
from .groups import FiniteGroup

DEFAULT_SIZE_LIMIT = 10**6

GTuple = tuple[int, ...]
Perm = tuple[int, ...]


def size_limit() -> int:
    raw = os.environ.get("GFROB_SIZE_LIMIT")
    return int(raw) if raw else DEFAULT_SIZE_LIMIT


def guard_size(group: FiniteGroup, n: int, limit: int | None = None) -> None:
    cap = limit if limit is not None else size_limit()
    total = group.order**n * factorial(n)
    if total > cap:
        raise SizeLimit(f"|G|^n * n! = {total} exceeds limit {cap}")


@dataclass(frozen=True)
class Arrow:
    """A realized element of G^n x| S_n attached to its source tuple."""

    source: GTuple
    gpart: GTuple
    perm: Perm
    target: GTuple

    @property
    def n(self) -> int:
        return len(self.source)

    def __eq__(self, other):
        if not isinstance(other, Arrow):
            return NotImplemented
        return (self.source, self.gpart, self.perm) == (other.source, other.gpart, other.perm)

    def __hash__(self):
        return hash((self.source, self.gpart, self.perm))


def _act(group: FiniteGroup, gpart: GTuple, perm: Perm, t: GTuple) -> GTuple:
    out = [0] * len(t)
    for i, (g, x) in enumerate(zip(gpart, t)):
        out[perm[i]] = group.conj(g, x)
    return tuple(out)


def make_arrow(group: FiniteGroup, source: GTuple, gpart: GTuple, perm: Perm) -> Arrow:
    return Arrow(source, gpart, perm, _act(group, gpart, perm, source))


def identity_arrow(group: FiniteGroup, t: GTuple) -> Arrow:
    n = len(t)
    e = group.identity
    return Arrow(t, tuple([e] * n), tuple(range(n)), t)


def braid_gen_action(group: FiniteGroup, i: int, t: GTuple, inverse: bool = False) -> GTuple:
    n = len(t)
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} for n={n}")
    j = i - 1
    out = list(t)
    if inverse:
        out[j], out[j + 1] = t[j + 1], group.conj(group.inv(t[j + 1]), t[j])
    else:
        out[j], out[j + 1] = group.conj(t[j], t[j + 1]), t[j]
    return tuple(out)


def gen_arrow(group: FiniteGroup, i: int, t: GTuple) -> Arrow:
    """The arrow realized by the generator b_i at tuple t."""
    n = len(t)
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} for n={n}")
    e = group.identity
    gpart = [e] * n
    gpart[i] = t[i - 1]
    perm = list(range(n))
    perm[i - 1], perm[i] = i, i - 1
    return make_arrow(group, t, tuple(gpart), tuple(perm))


def inverse_arrow(group: FiniteGroup, a: Arrow) -> Arrow:
    perm_inv = [0] * a.n
    for i, p in enumerate(a.perm):
        perm_inv[p] = i
    gpart = tuple(group.inv(a.gpart[perm_inv[j]]) for j in range(a.n))
    return Arrow(a.target, gpart, tuple(perm_inv), a.source)


def inverse_gen_arrow(group: FiniteGroup, i: int, t: GTuple) -> Arrow:
    """The arrow realized by b_i^{-1} at tuple t."""
    s = braid_gen_action(group, i, t, inverse=True)
    return inverse_arrow(group, gen_arrow(group, i, s))


def compose_arrows(group: FiniteGroup, a2: Arrow, a1: Arrow) -> Arrow:
    """a2 o a1 (first a1, then a2)."""
    if a1.target != a2.source:
        raise SourceTargetMismatch(f"target {a1.target} != source {a2.source}")
    perm = tuple(a2.perm[p] for p in a1.perm)
    gpart = tuple(group.mul(a2.gpart[a1.perm[j]], a1.gpart[j]) for j in range(a1.n))
    return Arrow(a1.source, gpart, perm, a2.target)


def g_degree(group: FiniteGroup, t: GTuple) -> int:
    return group.product(t)


def reflect_tuple(group: FiniteGroup, t: GTuple) -> GTuple:
    return tuple(group.inv(x) for x in reversed(t))


def diagonal_tuple_action(group: FiniteGroup, g: int, t: GTuple) -> GTuple:
    return tuple(group.conj(g, x) for x in t)


Word = tuple[tuple[int, bool], ...]  # sequence of (generator index, inverted)


@dataclass(frozen=True, eq=False)
class Component:
    """One connected component of the braid groupoid, based at a chosen tuple.

    arrows holds every arrow with source == basepoint; words holds, for each
    of them, one braid word realizing it (later-applied generators last).
    """

    group: FiniteGroup
    basepoint: GTuple
    members: frozenset[GTuple]
    arrows: tuple[Arrow, ...]
    words: dict[Arrow, Word] = field(repr=False)
    n_C: int
    m_C: int
    g_degree: int
    endos: tuple[Arrow, ...] = field(repr=False)
    connectors: dict[GTuple, Arrow] = field(repr=False)

    @property
    def canonical(self) -> GTuple:
        return min(self.members)

    def hom(self, target: GTuple) -> list[Arrow]:
        return [a for a in self.arrows if a.target == target]

    def connecting(self, member: GTuple) -> Arrow:
        return self.connectors[member]


_component_cache: dict[tuple[FiniteGroup, GTuple], Component] = {}


def _orbit(group: FiniteGroup, t: GTuple) -> frozenset[GTuple]:
    n = len(t)
    seen = {tuple(t)}
    queue = [tuple(t)]
    while queue:
        frontier = []
        for s in queue:
            for i in range(1, n):
                for inv in (False, True):
                    u = braid_gen_action(group, i, s, inverse=inv)
                    if u not in seen:
                        seen.add(u)
                        frontier.append(u)
        queue = frontier
    return frozenset(seen)


def _arrow_closure(group: FiniteGroup, base: GTuple) -> dict[Arrow, Word]:
    n = len(base)
    start = identity_arrow(group, base)
    words: dict[Arrow, Word] = {start: ()}
    queue = [start]
    steps = [(i, inv) for i in range(1, n) for inv in (False, True)]
    while queue:
        frontier = []
        for a in queue:
            for i, inv in steps:
                g = inverse_gen_arrow(group, i, a.target) if inv else gen_arrow(group, i, a.target)
                c = compose_arrows(group, g, a)
                if c not in words:
                    words[c] = words[a] + ((i, inv),)
                    frontier.append(c)
        queue = frontier
    return words


def _build_component(group: FiniteGroup, basepoint: GTuple, words: dict[Arrow, Word]) -> Component:
    arrows = tuple(sorted(words, key=lambda a: (a.target, a.gpart, a.perm)))
    members = frozenset(a.target for a in arrows)
    counts: dict[GTuple, int] = {}
    for a in arrows:
        counts[a.target] = counts.get(a.target, 0) + 1
    sizes = set(counts.values())
    if len(sizes) != 1:
        raise AssertionError(f"hom-set sizes not constant on component: {counts}")
    degs = {g_degree(group, m) for m in members}
    if len(degs) != 1:
        raise AssertionError(f"G-degree not constant on component: {degs}")
    connectors: dict[GTuple, Arrow] = {}
    for a in arrows:
        connectors.setdefault(a.target, a)
    return Component(
        group=group,
        basepoint=basepoint,
        members=members,
        arrows=arrows,
        words=words,
        n_C=len(arrows),
        m_C=sizes.pop(),
        g_degree=degs.pop(),
        endos=tuple(a for a in arrows if a.target == basepoint),
        connectors=connectors,
    )


def _invert_word(word: Word) -> Word:
    return tuple((i, not inv) for i, inv in reversed(word))


def enumerate_component(group: FiniteGroup, t: GTuple, limit: int | None = None) -> Component:
    """All arrows with source t, by closure under generator arrows and inverses.

    The expensive arrow closure runs once per component, at the
    lexicographically least member; other basepoints are reached by
    composing with a connecting arrow.  Results are cached; the insert is
    idempotent, so concurrent readers sharing the cache are safe.
    """
    t = tuple(t)
    key = (group, t)
    hit = _component_cache.get(key)
    if hit is not None:
        return hit
    guard_size(group, len(t), limit)

    rep = min(_orbit(group, t))
    rep_key = (group, rep)
    base = _component_cache.get(rep_key)
    if base is None:
        base = _build_component(group, rep, _arrow_closure(group, rep))
        _component_cache[rep_key] = base
    if t == rep:
        return base

    connect = next(a for a in base.arrows if a.target == t)
    h = inverse_arrow(group, connect)  # t -> rep
    h_word = _invert_word(base.words[connect])
    words = {
        compose_arrows(group, a, h): h_word + base.words[a] for a in base.arrows
    }
    comp = _build_component(group, t, words)
    _component_cache[key] = comp
    return comp


def diagonal_g_action(group: FiniteGroup, g: int, comp: Component) -> Component:
    return enumerate_component(group, diagonal_tuple_action(group, g, comp.basepoint))


def _reflect_step(group: FiniteGroup, n: int, i: int, inv: bool, source: GTuple) -> Arrow:
    """Reflection of one signed generator arrow applied at the given source."""
    if not inv:
        # b_i at s reflects to b_{n-i} at r(b_i s), mapping r(b_i s) -> r(s).
        return gen_arrow(group, n - i, source)
    # b_i^{-1} at s reflects to b_{n-i}^{-1} at r(b_i^{-1} s).
    return inverse_gen_arrow(group, n - i, source)


def reflect_arrow(group: FiniteGroup, a: Arrow) -> Arrow:
    """Image of an arrow under the reflection functor.

    Sends an arrow source -> target to an arrow r(target) -> r(source),
    reversing any realizing braid word and swapping b_i for b_{n-i}.  The
    result does not depend on the chosen word.
    """
    comp = enumerate_component(group, a.source)
    word = comp.words.get(a)
    if word is None:
        raise SourceTargetMismatch("arrow is not realized from its stated source")
    n = a.n
    out = identity_arrow(group, reflect_tuple(group, a.target))
    for i, inv in reversed(word):
        step = _reflect_step(group, n, i, inv, out.target)
        out = compose_arrows(group, step, out)
    return out


def clear_component_cache() -> None:
    _component_cache.clear()
