"""Finite-dimensional G-graded G-modules and sparse tensors on them.

A module carries one group-element degree per basis vector (every basis
vector is homogeneous) and one exact rational matrix per group element.
The action must be a homomorphism and must map each degree block H_m onto
the block of the conjugate degree gmg^{-1}.

Tensor powers are sparse maps from basis-index tuples to coefficients.
The braiding on adjacent factors sends v (x) w, with v homogeneous of
degree g, to (g.w) (x) v; its inverse sends v (x) w to w (x) (h^{-1}.v)
with h the degree of w.  Degree tuples then transform exactly like the
conjugate-and-swap action on G^n, which ties these operators to the braid
groupoid arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import DegreeMismatch, IndexOutOfRange, InvalidAction, InvalidMorphism, NotZ2
from .groupoid import Arrow, GTuple
from .groups import FiniteGroup

Matrix = linalg.Mat


@dataclass(frozen=True)
class GradedModule:
    group: FiniteGroup
    degrees: tuple[int, ...]
    action: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def degree_tuple(self, idx: Sequence[int]) -> GTuple:
        return tuple(self.degrees[j] for j in idx)

    def rho(self, g: int) -> Matrix:
        return self.action[g]

    def block_indices(self, g: int) -> list[int]:
        return [j for j, d in enumerate(self.degrees) if d == g]

    def untwisted_indices(self) -> list[int]:
        return self.block_indices(self.group.identity)


@dataclass(frozen=True)
class ModuleReport:
    homomorphism: bool
    identity: bool
    grading: bool
    invertible: bool
    self_invariant: bool

    @property
    def valid(self) -> bool:
        return self.homomorphism and self.identity and self.grading and self.invertible


def validate_module(h: GradedModule) -> ModuleReport:
    g = h.group
    d = h.dim
    if len(h.action) != g.order or any(len(m) != d or any(len(r) != d for r in m) for m in h.action):
        raise InvalidAction("action matrices must be |G| square matrices of the module dimension")
    if any(not 0 <= deg < g.order for deg in h.degrees):
        raise InvalidAction("basis degree out of range")

    identity_ok = h.action[g.identity] == linalg.identity(d)
    homo_ok = all(
        h.action[g.mul(a, b)] == linalg.mat_mul(h.action[a], h.action[b])
        for a in g.elements()
        for b in g.elements()
    )
    grading_ok = True
    for gamma in g.elements():
        m = h.action[gamma]
        for i in range(d):
            for j in range(d):
                if m[i][j] != 0 and h.degrees[i] != g.conj(gamma, h.degrees[j]):
                    grading_ok = False
    invertible_ok = all(linalg.rank(h.action[gamma]) == d for gamma in g.elements())

    self_inv = True
    for gamma in g.elements():
        m = h.action[gamma]
        for j in h.block_indices(gamma):
            for i in range(d):
                want = Fraction(1) if i == j else Fraction(0)
                if m[i][j] != want:
                    self_inv = False
    return ModuleReport(homo_ok, identity_ok, grading_ok, invertible_ok, self_inv)


def graded_module(
    group: FiniteGroup,
    degrees: Sequence[int],
    action: Sequence[Sequence[Sequence]],
    require_valid: bool = True,
) -> GradedModule:
    h = GradedModule(group, tuple(degrees), tuple(linalg.mat(m) for m in action))
    if require_valid:
        rep = validate_module(h)
        if not rep.valid:
            raise InvalidAction(f"module validation failed: {rep}")
    return h


def dual_module(h: GradedModule) -> GradedModule:
    """Dual basis module: degrees invert, and gamma acts by rho(gamma^-1)^T."""
    g = h.group
    degrees = tuple(g.inv(d) for d in h.degrees)
    action = tuple(linalg.transpose(h.action[g.inv(gamma)]) for gamma in g.elements())
    return GradedModule(g, degrees, action)


class Tensor:
    """Sparse element of the n-th tensor power, keyed by basis-index tuples."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.n = n
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, c in (terms or {}).items():
            if len(idx) != n:
                raise ValueError("index tuple length mismatch")
            c = Fraction(c)
            if c != 0:
                clean[tuple(idx)] = c
        self.terms = clean

    @classmethod
    def basis(cls, idx: Sequence[int]) -> "Tensor":
        return cls(len(idx), {tuple(idx): Fraction(1)})

    @classmethod
    def scalar(cls, c) -> "Tensor":
        return cls(0, {(): Fraction(c)})

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.n != other.n:
            raise DegreeMismatch("tensor degrees differ")
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            terms[idx] = terms.get(idx, Fraction(0)) + c
        return Tensor(self.n, terms)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-1)

    def scale(self, c) -> "Tensor":
        c = Fraction(c)
        return Tensor(self.n, {idx: c * v for idx, v in self.terms.items()})

    def juxt(self, other: "Tensor") -> "Tensor":
        """Concatenation product into the (n+m)-th tensor power."""
        terms: dict[tuple[int, ...], Fraction] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                idx = i1 + i2
                terms[idx] = terms.get(idx, Fraction(0)) + c1 * c2
        return Tensor(self.n + other.n, terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor) and self.n == other.n and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return f"Tensor({self.n}, 0)"
        bits = [f"{c}*e{list(idx)}" for idx, c in self.sorted_terms()]
        return " + ".join(bits)


def split_homogeneous(h: GradedModule, v: Tensor) -> dict[GTuple, Tensor]:
    """Split a tensor into its G^n-homogeneous parts, keyed by degree tuple."""
    parts: dict[GTuple, dict[tuple[int, ...], Fraction]] = {}
    for idx, c in v.terms.items():
        key = h.degree_tuple(idx)
        parts.setdefault(key, {})[idx] = c
    return {key: Tensor(v.n, terms) for key, terms in parts.items()}


# Sparse column views of the action matrices, kept per module instance.
_column_cache: dict[int, tuple[GradedModule, dict[int, list[list[tuple[int, Fraction]]]]]] = {}


def action_columns(h: GradedModule, g: int) -> list[list[tuple[int, Fraction]]]:
    """columns[j] = nonzero (row, entry) pairs of the action matrix of g."""
    entry = _column_cache.get(id(h))
    if entry is None or entry[0] is not h:
        entry = (h, {})
        _column_cache[id(h)] = entry
    cols_by_g = entry[1]
    cols = cols_by_g.get(g)
    if cols is None:
        m = h.action[g]
        cols = [
            [(i, m[i][j]) for i in range(h.dim) if m[i][j] != 0] for j in range(h.dim)
        ]
        cols_by_g[g] = cols
    return cols


def arrow_apply_into(
    h: GradedModule,
    a: "Arrow",
    terms: Mapping[tuple[int, ...], Fraction],
    out: dict[tuple[int, ...], Fraction],
    scale: Fraction = Fraction(1),
) -> None:
    """Accumulate scale * (a . terms) into out (no degree validation)."""
    e = h.group.identity
    cols = [None if g == e else action_columns(h, g) for g in a.gpart]
    perm = a.perm
    n = a.n
    for idx, c in terms.items():
        partial: list[tuple[tuple[int, ...], Fraction]] = [((), c * scale)]
        for s, j in enumerate(idx):
            col = cols[s]
            if col is None:
                partial = [(p + (j,), pc) for p, pc in partial]
                continue
            branches = col[j]
            if len(branches) == 1:
                i, w = branches[0]
                partial = [(p + (i,), pc * w) for p, pc in partial]
            else:
                partial = [(p + (i,), pc * w) for p, pc in partial for i, w in branches]
        for p, pc in partial:
            new = [0] * n
            for s, i in enumerate(p):
                new[perm[s]] = i
            key = tuple(new)
            prev = out.get(key)
            out[key] = pc if prev is None else prev + pc


def _apply_matrix_slot(h: GradedModule, m: Matrix, v: Tensor, slot: int) -> Tensor:
    terms: dict[tuple[int, ...], Fraction] = {}
    for idx, c in v.terms.items():
        j = idx[slot]
        for i in range(h.dim):
            a = m[i][j]
            if a == 0:
                continue
            new = idx[:slot] + (i,) + idx[slot + 1:]
            terms[new] = terms.get(new, Fraction(0)) + a * c
    return Tensor(v.n, terms)


def braid_act(h: GradedModule, i: int, v: Tensor, inverse: bool = False) -> Tensor:
    """Categorical braiding on adjacent tensor factors i, i+1 (1-based)."""
    n = v.n
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} for n={n}")
    s = i - 1
    g = h.group
    terms: dict[tuple[int, ...], Fraction] = {}
    for idx, c in v.terms.items():
        a, b = idx[s], idx[s + 1]
        if inverse:
            m = h.action[g.inv(h.degrees[b])]
            for k in range(h.dim):
                coef = m[k][a]
                if coef == 0:
                    continue
                new = idx[:s] + (b, k) + idx[s + 2:]
                terms[new] = terms.get(new, Fraction(0)) + coef * c
        else:
            m = h.action[h.degrees[a]]
            for k in range(h.dim):
                coef = m[k][b]
                if coef == 0:
                    continue
                new = idx[:s] + (k, a) + idx[s + 2:]
                terms[new] = terms.get(new, Fraction(0)) + coef * c
    return Tensor(n, terms)


def arrow_act(h: GradedModule, a: Arrow, v: Tensor) -> Tensor:
    """Apply a groupoid arrow: gpart componentwise, then permute slots."""
    if v.n != a.n:
        raise DegreeMismatch("tensor degree differs from arrow length")
    for idx in v.terms:
        if h.degree_tuple(idx) != a.source:
            raise DegreeMismatch(
                f"tensor term of degree {h.degree_tuple(idx)} does not match arrow source {a.source}"
            )
    out: dict[tuple[int, ...], Fraction] = {}
    arrow_apply_into(h, a, v.terms, out)
    return Tensor(v.n, out)


def diagonal_act(h: GradedModule, g: int, v: Tensor) -> Tensor:
    out = v
    if g == h.group.identity:
        return out
    for slot in range(v.n):
        out = _apply_matrix_slot(h, h.action[g], out, slot)
    return out


def invariants_basis(h: GradedModule) -> list[linalg.Vec]:
    """Basis of the joint fixed space of all rho(gamma)."""
    rows: list[list[Fraction]] = []
    ident = linalg.identity(h.dim)
    for gamma in h.group.elements():
        if gamma == h.group.identity:
            continue
        for i in range(h.dim):
            rows.append([h.action[gamma][i][j] - ident[i][j] for j in range(h.dim)])
    if not rows:
        return [tuple(row) for row in ident]
    return linalg.nullspace(rows)


def untwisted_basis(h: GradedModule) -> list[linalg.Vec]:
    vecs = []
    for j in h.untwisted_indices():
        vecs.append(tuple(Fraction(1) if i == j else Fraction(0) for i in range(h.dim)))
    return vecs


def z2_decompose(h: GradedModule) -> tuple[list[linalg.Vec], list[linalg.Vec], list[linalg.Vec]]:
    """Split a self-invariant order-2 module into (fixed, sign, twisted) parts.

    Returns bases of H_i (untwisted, fixed by the involution), H_v (untwisted,
    flipped by the involution) and H_g (the twisted sector).
    """
    g = h.group
    if g.order != 2:
        raise NotZ2("z2_decompose requires a group of order 2")
    rep = validate_module(h)
    if not rep.self_invariant:
        raise NotZ2("z2_decompose requires a self-invariant module")
    nontriv = 1 - g.identity
    rho = h.action[nontriv]
    e_idx = h.untwisted_indices()

    def eigen(sign: int) -> list[linalg.Vec]:
        rows = []
        for i in e_idx:
            rows.append([rho[i][j] - (sign if i == j else 0) for j in e_idx])
        kern = linalg.nullspace(rows)
        out = []
        for k in kern:
            full = [Fraction(0)] * h.dim
            for pos, j in enumerate(e_idx):
                full[j] = k[pos]
            out.append(tuple(full))
        return out

    h_i = eigen(1)
    h_v = eigen(-1)
    h_g = [
        tuple(Fraction(1) if i == j else Fraction(0) for i in range(h.dim))
        for j in h.block_indices(nontriv)
    ]
    return h_i, h_v, h_g


def is_morphism(source: GradedModule, target: GradedModule, m: Matrix) -> bool:
    """Check a matrix (target.dim x source.dim) is degree-preserving and equivariant."""
    if source.group != target.group:
        return False
    if len(m) != target.dim or any(len(r) != source.dim for r in m):
        return False
    for i in range(target.dim):
        for j in range(source.dim):
            if m[i][j] != 0 and target.degrees[i] != source.degrees[j]:
                return False
    for gamma in source.group.elements():
        if linalg.mat_mul(m, source.action[gamma]) != linalg.mat_mul(target.action[gamma], m):
            return False
    return True


def require_morphism(source: GradedModule, target: GradedModule, m: Matrix) -> None:
    if not is_morphism(source, target, m):
        raise InvalidMorphism("matrix is not a degree-preserving equivariant morphism")


def submodule_on_indices(h: GradedModule, indices: Sequence[int]) -> tuple[GradedModule, Matrix]:
    """Module on a subset of basis vectors whose span is action-invariant.

    Returns the submodule and the inclusion matrix (h.dim x len(indices)).
    """
    idx = list(indices)
    degrees = tuple(h.degrees[j] for j in idx)
    action = []
    for gamma in h.group.elements():
        m = h.action[gamma]
        for i in range(h.dim):
            for j in idx:
                if m[i][j] != 0 and i not in idx:
                    raise InvalidMorphism("span of chosen indices is not action-invariant")
        action.append(tuple(tuple(m[i][j] for j in idx) for i in idx))
    sub = GradedModule(h.group, degrees, tuple(action))
    incl = tuple(
        tuple(Fraction(1) if (i == idx[j]) else Fraction(0) for j in range(len(idx)))
        for i in range(h.dim)
    )
    return sub, incl


def trivial_graded_module(group: FiniteGroup, dim: int) -> GradedModule:
    """Everything in the untwisted sector with the trivial action."""
    e = group.identity
    ident = linalg.identity(dim)
    return GradedModule(group, tuple([e] * dim), tuple(ident for _ in group.elements()))
