"""Braided tensors: the averaging projector, invariant bases, and the ring.

The braidization of a homogeneous tensor of degree tuple d averages the
actions of all groupoid arrows with source d.  It is an idempotent
projector onto the braid-invariant tensors, constant on braid orbits, and
it commutes with module morphisms; juxtaposition followed by braidization
is an associative braided-commutative product with unity.

Forms on a module live as tensors on its dual module.  Evaluation pairs
slot k of the vector side against slot n+1-k of the form side (reversed
trace), which makes the generator b_i on forms adjoint to b_{n-i} on
vectors, and makes braidization self-adjoint for the pairing.

Homogeneous degree-n polynomials and symmetric n-tensors are identified by
full polarization: the tensor coefficient on any index tuple realizing the
exponent vector a is coeff(a) * a! / n!, so that diagonal evaluation
recovers the polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from math import factorial
from typing import Sequence

from . import linalg
from .errors import DegreeMismatch, ModuleMismatch, SizeLimit
from .groupoid import enumerate_component, guard_size
from .modules import (
    GradedModule,
    Tensor,
    arrow_apply_into,
    braid_act,
    dual_module,
    require_morphism,
    split_homogeneous,
)
from .poly import MultiPoly


def braidize(h: GradedModule, v: Tensor) -> Tensor:
    """Average of all arrow actions with source the degree tuple of each part.

    Factoring every hom-set through the endomorphisms of the basepoint,
    sum(A) . v = sum_targets connector . (sum(End) . v), brings the cost
    from |C| * m_C down to |C| + m_C arrow applications per part.
    """
    if v.n <= 1:
        return v
    out: dict[tuple[int, ...], Fraction] = {}
    for deg, part in split_homogeneous(h, v).items():
        comp = enumerate_component(h.group, deg)
        scale = Fraction(1, comp.n_C)
        endo_sum: dict[tuple[int, ...], Fraction] = {}
        for a in comp.endos:
            arrow_apply_into(h, a, part.terms, endo_sum)
        endo_sum = {k: c for k, c in endo_sum.items() if c}
        for conn in comp.connectors.values():
            arrow_apply_into(h, conn, endo_sum, out, scale)
    return Tensor(v.n, out)


def is_braided(h: GradedModule, v: Tensor) -> bool:
    return all(braid_act(h, i, v) == v for i in range(1, v.n))


@dataclass(frozen=True)
class InvariantForm:
    """A braid-invariant tensor tagged with its supporting component."""

    component: tuple[int, ...]  # canonical representative tuple
    g_degree: int
    tensor: Tensor


def br_basis(h: GradedModule, n: int, limit: int | None = None) -> list[InvariantForm]:
    """Basis of the joint fixed space of all braid generators on the n-th power.

    Computed blockwise per groupoid component by an exact nullspace, so it is
    independent of the averaging construction in braidize.
    """
    from .groupoid import size_limit

    guard_size(h.group, n, limit)
    cap = limit if limit is not None else size_limit()
    if h.dim**n > cap:
        raise SizeLimit(f"dim^n = {h.dim ** n} exceeds limit {cap}")
    if n == 0:
        return [InvariantForm((), h.group.identity, Tensor.scalar(1))]

    blocks: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    comp_of: dict[tuple[int, ...], object] = {}
    for idx in iter_product(range(h.dim), repeat=n):
        deg = h.degree_tuple(idx)
        if deg not in comp_of:
            comp_of[deg] = enumerate_component(h.group, deg)
        rep = comp_of[deg].canonical
        blocks.setdefault(rep, []).append(idx)

    out: list[InvariantForm] = []
    for rep in sorted(blocks):
        tuples = sorted(blocks[rep])
        pos = {t: k for k, t in enumerate(tuples)}
        rows: list[list[Fraction]] = []
        for i in range(1, n):
            for t in tuples:
                image = braid_act(h, i, Tensor.basis(t))
                row = [Fraction(0)] * len(tuples)
                row[pos[t]] -= 1
                for idx, c in image.terms.items():
                    row[pos[idx]] += c
                if any(row):
                    rows.append(row)
        kernel = linalg.nullspace(rows) if rows else [
            tuple(Fraction(1) if i == k else Fraction(0) for i in range(len(tuples)))
            for k in range(len(tuples))
        ]
        comp = enumerate_component(h.group, rep)
        for vec in kernel:
            tensor = Tensor(n, {t: c for t, c in zip(tuples, vec) if c != 0})
            out.append(InvariantForm(rep, comp.g_degree, tensor))
    return out


def pair(x: Tensor, v: Tensor) -> Fraction:
    """Reversed-trace evaluation of a dual tensor against a primal tensor."""
    if x.n != v.n:
        raise DegreeMismatch("tensor degrees differ")
    total = Fraction(0)
    for idx, c in x.terms.items():
        w = v.terms.get(tuple(reversed(idx)))
        if w is not None:
            total += c * w
    return total


@dataclass(frozen=True)
class BraidedSeries:
    """Degree-truncated sum of braided tensors on one module."""

    module: GradedModule
    truncation: int
    parts: dict[int, Tensor] = field(default_factory=dict)
    g_degree_filter: int | None = None

    def __post_init__(self):
        clean = {d: t for d, t in self.parts.items() if t and 0 <= d <= self.truncation}
        for d, t in clean.items():
            if t.n != d:
                raise DegreeMismatch(f"part at degree {d} has tensor degree {t.n}")
        object.__setattr__(self, "parts", clean)
        if self.g_degree_filter is not None:
            for t in clean.values():
                for idx in t.terms:
                    if self.module.group.product(self.module.degree_tuple(idx)) != self.g_degree_filter:
                        raise DegreeMismatch("series violates its G-degree filter")

    def part(self, d: int) -> Tensor:
        return self.parts.get(d, Tensor(d))

    def __add__(self, other: "BraidedSeries") -> "BraidedSeries":
        if self.module != other.module or self.truncation != other.truncation:
            raise ModuleMismatch("series live on different modules or truncations")
        parts = dict(self.parts)
        for d, t in other.parts.items():
            parts[d] = parts.get(d, Tensor(d)) + t
        return BraidedSeries(self.module, self.truncation, parts, self.g_degree_filter)

    def scale(self, c) -> "BraidedSeries":
        return BraidedSeries(
            self.module, self.truncation, {d: t.scale(c) for d, t in self.parts.items()},
            self.g_degree_filter,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BraidedSeries)
            and self.module == other.module
            and self.truncation == other.truncation
            and self.parts == other.parts
        )

    def assert_braided(self) -> None:
        for t in self.parts.values():
            if not is_braided(self.module, t):
                raise DegreeMismatch("series part is not braid-invariant")


def unit_series(h: GradedModule, truncation: int) -> BraidedSeries:
    return BraidedSeries(h, truncation, {0: Tensor.scalar(1)})


def series_from_tensors(h: GradedModule, truncation: int, tensors: Sequence[Tensor]) -> BraidedSeries:
    parts: dict[int, Tensor] = {}
    for t in tensors:
        parts[t.n] = parts.get(t.n, Tensor(t.n)) + t
    return BraidedSeries(h, truncation, parts)


def circ_product(x: BraidedSeries, y: BraidedSeries) -> BraidedSeries:
    """Degreewise juxtaposition followed by braidization, truncated."""
    if x.module != y.module:
        raise ModuleMismatch("series live on different modules")
    if x.truncation != y.truncation:
        raise ModuleMismatch("series have different truncations")
    h = x.module
    parts: dict[int, Tensor] = {}
    for d in range(x.truncation + 1):
        acc = Tensor(d)
        for m in range(d + 1):
            xm = x.parts.get(m)
            yn = y.parts.get(d - m)
            if xm and yn:
                acc = acc + braidize(h, xm.juxt(yn))
        if acc:
            parts[d] = acc
    return BraidedSeries(h, x.truncation, parts)


# -- polynomials <-> symmetric tensors (polarization) ----------------------


def form_from_poly(p: MultiPoly, names: Sequence[str], n: int) -> Tensor:
    """Polarize the degree-n homogeneous part of p over the given coordinates."""
    part = p.homogeneous_part(n)
    pos = {v: names.index(v) for v in part.vars}
    terms: dict[tuple[int, ...], Fraction] = {}
    for exp, c in part.terms.items():
        letters: list[int] = []
        for v, e in zip(part.vars, exp):
            letters.extend([pos[v]] * e)
        weight = c
        for e in exp:
            weight *= factorial(e)
        weight /= factorial(n)
        for tup in _distinct_perms(tuple(letters)):
            terms[tup] = terms.get(tup, Fraction(0)) + weight
    return Tensor(n, terms)


def _distinct_perms(letters: tuple[int, ...]) -> set[tuple[int, ...]]:
    from itertools import permutations

    return set(permutations(letters))


def poly_from_form(t: Tensor, names: Sequence[str]) -> MultiPoly:
    """Diagonal evaluation: the polynomial whose polarization is the tensor."""
    out: dict[tuple[int, ...], Fraction] = {}
    for idx, c in t.terms.items():
        exp = [0] * len(names)
        for j in idx:
            exp[j] += 1
        key = tuple(exp)
        out[key] = out.get(key, Fraction(0)) + c
    return MultiPoly(names, out)


def series_from_poly(
    h: GradedModule,
    p: MultiPoly,
    names: Sequence[str],
    truncation: int | None = None,
    g_degree_filter: int | None = None,
) -> BraidedSeries:
    cap = truncation if truncation is not None else p.total_degree()
    parts = {}
    for d in range(cap + 1):
        t = form_from_poly(p, names, d)
        if t:
            parts[d] = t
    return BraidedSeries(h, cap, parts, g_degree_filter)


# -- pullback and restrictions ---------------------------------------------


def pullback_tensor(x: Tensor, m: linalg.Mat) -> Tensor:
    """Slot-wise transport of a dual tensor along a linear map.

    If x lives on K^* and m is the matrix of phi : H -> K (rows indexed by K),
    the result is the n-fold pullback living on H^*.
    """
    out = x
    rows = len(m)
    cols = len(m[0]) if m else 0
    for slot in range(x.n):
        terms: dict[tuple[int, ...], Fraction] = {}
        for idx, c in out.terms.items():
            i = idx[slot]
            row = m[i]
            for j in range(cols):
                a = row[j]
                if a == 0:
                    continue
                new = idx[:slot] + (j,) + idx[slot + 1:]
                terms[new] = terms.get(new, Fraction(0)) + a * c
        out = Tensor(x.n, terms)
    return out


def pullback_series(
    source: GradedModule,
    target: GradedModule,
    m: linalg.Mat,
    x: BraidedSeries,
) -> BraidedSeries:
    """Pull a series of forms on the target back along a morphism source -> target.

    The series x must live on dual_module(target); the result lives on
    dual_module(source).  Morphisms are validated before use.
    """
    require_morphism(source, target, m)
    if x.module != dual_module(target):
        raise ModuleMismatch("series does not live on the dual of the target module")
    parts = {d: pullback_tensor(t, m) for d, t in x.parts.items()}
    return BraidedSeries(dual_module(source), x.truncation, parts)


def restrict_tensor(x: Tensor, basis: Sequence[linalg.Vec]) -> Tensor:
    """Values of a dual tensor on tuples from a chosen list of vectors.

    basis[j] gives the coordinates of the j-th chosen vector; the result is
    a tensor over indices into that list (the slot-wise pullback along the
    column matrix of the chosen vectors).
    """
    if not basis:
        return Tensor(x.n)
    dim = len(basis[0])
    m = tuple(tuple(basis[j][i] for j in range(len(basis))) for i in range(dim))
    return pullback_tensor(x, m)


def is_symmetric(t: Tensor) -> bool:
    from itertools import permutations

    for idx, c in t.terms.items():
        for p in permutations(idx):
            if t.terms.get(tuple(p), Fraction(0)) != c:
                return False
    return True


@dataclass(frozen=True)
class SymmetricSeries:
    """Symmetric truncated series over an anonymous coordinate list."""

    dim: int
    truncation: int
    parts: dict[int, Tensor] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "parts", {d: t for d, t in self.parts.items() if t})

    def as_poly(self, names: Sequence[str]) -> MultiPoly:
        if len(names) != self.dim:
            raise DegreeMismatch("coordinate name count differs from dimension")
        out = MultiPoly.zero(names)
        for t in self.parts.values():
            out = out + poly_from_form(t, names)
        return out

    @classmethod
    def from_poly(cls, p: MultiPoly, names: Sequence[str], truncation: int) -> "SymmetricSeries":
        parts = {}
        for d in range(truncation + 1):
            t = form_from_poly(p, names, d)
            if t:
                parts[d] = t
        return cls(len(names), truncation, parts)

    def multiply(self, other: "SymmetricSeries") -> "SymmetricSeries":
        if self.dim != other.dim or self.truncation != other.truncation:
            raise ModuleMismatch("series shapes differ")
        names = tuple(f"s{i}" for i in range(self.dim))
        prod = self.as_poly(names) * other.as_poly(names)
        capped = sum(
            (prod.homogeneous_part(d) for d in range(self.truncation + 1)),
            MultiPoly.zero(names),
        )
        return SymmetricSeries.from_poly(capped, names, self.truncation)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymmetricSeries)
            and self.dim == other.dim
            and self.truncation == other.truncation
            and self.parts == other.parts
        )


def restrict_untwisted(x: BraidedSeries) -> SymmetricSeries:
    """Restriction to the untwisted sector; an algebra morphism onto symmetric series."""
    h = x.module  # dual module carrying the forms
    idx = h.untwisted_indices()
    basis = [
        tuple(Fraction(1) if i == j else Fraction(0) for i in range(h.dim)) for j in idx
    ]
    parts = {d: restrict_tensor(t, basis) for d, t in x.parts.items()}
    return SymmetricSeries(len(idx), x.truncation, parts)


def restrict_invariants(x: BraidedSeries, invariant_vectors: Sequence[linalg.Vec]) -> SymmetricSeries:
    """Restriction of forms to tuples of invariant vectors; linear, lands in symmetric series."""
    parts = {d: restrict_tensor(t, list(invariant_vectors)) for d, t in x.parts.items()}
    return SymmetricSeries(len(invariant_vectors), x.truncation, parts)
