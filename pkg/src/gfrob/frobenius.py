"""Metrics, potentials, WDVV verification, and G-Frobenius algebra checks.

A potential is a polynomial in the flat coordinates dual to a chosen basis.
Third partials contracted with the inverse metric define the multiplication
e_a o e_b = Y_abk g^{kl} e_l; the WDVV system is exactly the associativity
of this product, checked here as exact polynomial identities.

The cubic part of a potential and the metric together determine an algebra
by eta(v1 . v2, v3) = Y3(v1, v2, v3).  For a group of order two, a pair of
ordinary Frobenius manifolds agreeing on a common subspace assembles into a
module with three blocks (fixed / sign / twisted) carrying a braided
potential whose two restrictions recover the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .braided import form_from_poly, is_braided
from .errors import (
    BlockDegreeViolation,
    DegenerateMetric,
    DegreeMismatch,
    RestrictionMismatch,
    UnitFails,
)
from .groups import cyclic_group, trivial_group
from .linalg import Mat, Vec
from .modules import (
    GradedModule,
    Tensor,
    dual_module,
    invariants_basis,
    trivial_graded_module,
    validate_module,
)
from .poly import MultiPoly, linear_subst

# -- metrics ----------------------------------------------------------------


@dataclass(frozen=True)
class Metric:
    module: GradedModule
    matrix: Mat


@dataclass(frozen=True)
class MetricReport:
    symmetric: bool
    g_invariant: bool
    grading_preserving: bool
    blockwise_nondegenerate: bool
    eta_untwisted: Mat
    eta_untwisted_nondegenerate: bool
    eta_invariants: Mat
    eta_invariants_nondegenerate: bool

    @property
    def passed(self) -> bool:
        return (
            self.symmetric
            and self.g_invariant
            and self.grading_preserving
            and self.blockwise_nondegenerate
        )


def submatrix(m: Mat, rows: Sequence[int], cols: Sequence[int]) -> Mat:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


def check_metric(eta: Metric) -> MetricReport:
    h = eta.module
    g = h.group
    m = eta.matrix
    d = h.dim
    symmetric = all(m[i][j] == m[j][i] for i in range(d) for j in range(d))
    invariant = all(
        linalg.mat_mul(linalg.transpose(h.action[gamma]), linalg.mat_mul(m, h.action[gamma])) == m
        for gamma in g.elements()
    )
    grading = all(
        m[i][j] == 0
        for i in range(d)
        for j in range(d)
        if g.mul(h.degrees[i], h.degrees[j]) != g.identity
    )
    block_ok = True
    for gamma in g.elements():
        rows = h.block_indices(gamma)
        cols = h.block_indices(g.inv(gamma))
        if not rows and not cols:
            continue
        if len(rows) != len(cols):
            block_ok = False
            continue
        if rows and linalg.rank(submatrix(m, rows, cols)) != len(rows):
            block_ok = False

    e_idx = h.untwisted_indices()
    eta_e = submatrix(m, e_idx, e_idx)
    eta_e_nd = bool(e_idx) and linalg.rank(eta_e) == len(e_idx)
    inv_vecs = invariants_basis(h)
    incl = tuple(tuple(v[i] for v in inv_vecs) for i in range(d))
    eta_g = (
        linalg.mat_mul(linalg.transpose(incl), linalg.mat_mul(m, incl)) if inv_vecs else ()
    )
    eta_g_nd = bool(inv_vecs) and linalg.rank(eta_g) == len(inv_vecs)
    return MetricReport(symmetric, invariant, grading, block_ok, eta_e, eta_e_nd, eta_g, eta_g_nd)


# -- potentials and WDVV ------------------------------------------------------


@dataclass(frozen=True)
class Potential:
    """Polynomial potential in named flat coordinates (one per basis vector)."""

    names: tuple[str, ...]
    poly: MultiPoly

    def third(self, a: int, b: int, c: int) -> MultiPoly:
        p = self.poly.with_vars(sorted(set(self.poly.vars) | set(self.names)))
        return p.diff(self.names[a]).diff(self.names[b]).diff(self.names[c])


@dataclass(frozen=True)
class WdvvReport:
    passed: bool
    witnesses: tuple[tuple[int, int, int, int], ...]


def _third_partials(pot: Potential) -> dict[tuple[int, int, int], MultiPoly]:
    d = len(pot.names)
    p = pot.poly.with_vars(sorted(set(pot.poly.vars) | set(pot.names)))
    firsts = [p.diff(pot.names[a]) for a in range(d)]
    seconds = {}
    for a in range(d):
        for b in range(a, d):
            seconds[(a, b)] = firsts[a].diff(pot.names[b])
    out = {}
    for a in range(d):
        for b in range(a, d):
            for c in range(b, d):
                out[(a, b, c)] = seconds[(a, b)].diff(pot.names[c])
    return out


def wdvv_check(pot: Potential, eta: Mat) -> WdvvReport:
    """Exact associativity of the potential's product: reports violating tuples."""
    d = len(pot.names)
    try:
        ginv = linalg.mat_inv(eta)
    except ValueError:
        raise DegenerateMetric("metric is singular") from None
    third = _third_partials(pot)

    def y3(a: int, b: int, c: int) -> MultiPoly:
        return third[tuple(sorted((a, b, c)))]

    # rows[a][b][l] = sum_k Y_abk g^{kl}
    rows: dict[tuple[int, int], list[MultiPoly]] = {}
    for a in range(d):
        for b in range(a, d):
            row = []
            for l in range(d):
                acc = MultiPoly.zero(pot.names)
                for k in range(d):
                    if ginv[k][l] != 0:
                        acc = acc + y3(a, b, k) * ginv[k][l]
                row.append(acc)
            rows[(a, b)] = row

    def row(a: int, b: int) -> list[MultiPoly]:
        return rows[(a, b) if a <= b else (b, a)]

    witnesses = []
    for a in range(d):
        for c in range(a, d):
            for b in range(d):
                lhs_row = row(a, b)
                rhs_row = row(b, c)
                for dd in range(d):
                    lhs = MultiPoly.zero(pot.names)
                    rhs = MultiPoly.zero(pot.names)
                    for l in range(d):
                        if lhs_row[l]:
                            lhs = lhs + lhs_row[l] * y3(l, c, dd)
                        if rhs_row[l]:
                            rhs = rhs + rhs_row[l] * y3(l, a, dd)
                    if lhs != rhs:
                        witnesses.append((a, b, c, dd))
    return WdvvReport(not witnesses, tuple(sorted(set(witnesses))))


def mult_from_potential(pot: Potential, eta: Mat, point: Mapping[str, Fraction] | None = None):
    """Structure constants c[a][b][l] of the product at a point (default origin)."""
    d = len(pot.names)
    try:
        ginv = linalg.mat_inv(eta)
    except ValueError:
        raise DegenerateMetric("metric is singular") from None
    pt = {n: Fraction(0) for n in pot.names}
    if point:
        pt.update({k: Fraction(v) for k, v in point.items()})
    third = _third_partials(pot)

    def val(a, b, c):
        return third[tuple(sorted((a, b, c)))].eval(pt)

    out = []
    for a in range(d):
        row = []
        for b in range(d):
            entry = [sum(val(a, b, k) * ginv[k][l] for k in range(d)) for l in range(d)]
            row.append(tuple(entry))
        out.append(tuple(row))
    return tuple(out)


def potential_unit(pot: Potential, eta: Mat) -> Vec:
    """The vector u with u o e_b = e_b at the origin; raises UnitFails if none."""
    d = len(pot.names)
    c = mult_from_potential(pot, eta)
    rows = []
    rhs = []
    for b in range(d):
        for l in range(d):
            rows.append([c[a][b][l] for a in range(d)])
            rhs.append(Fraction(1) if b == l else Fraction(0))
    aug = [r + [v] for r, v in zip(rows, rhs)]
    red, pivots = linalg.rref(aug)
    if d in pivots or pivots != list(range(d)):
        raise UnitFails("no unique unit vector at the origin")
    u = [Fraction(0)] * d
    for r, p in enumerate(pivots):
        u[p] = red[r][d]
    return tuple(u)


# -- G-Frobenius algebras ------------------------------------------------------


@dataclass(frozen=True)
class GFrobeniusAlgebra:
    module: GradedModule
    metric: Mat
    mult: tuple[tuple[tuple[Fraction, ...], ...], ...]  # mult[a][b][k]
    unit: Vec

    @property
    def dim(self) -> int:
        return self.module.dim

    def product(self, v: Vec, w: Vec) -> Vec:
        d = self.dim
        out = [Fraction(0)] * d
        for a in range(d):
            if v[a] == 0:
                continue
            for b in range(d):
                if w[b] == 0:
                    continue
                coef = v[a] * w[b]
                for k in range(d):
                    if self.mult[a][b][k] != 0:
                        out[k] += coef * self.mult[a][b][k]
        return tuple(out)


@dataclass(frozen=True)
class GfaReport:
    module_valid: bool
    self_invariant: bool
    metric: MetricReport
    equivariance: bool
    graded_mult: bool
    braided_commutativity: bool
    metric_invariance: bool
    invariant_unit: bool
    associative: bool
    unital: bool

    @property
    def passed(self) -> bool:
        return (
            self.module_valid
            and self.self_invariant
            and self.metric.passed
            and self.equivariance
            and self.graded_mult
            and self.braided_commutativity
            and self.metric_invariance
            and self.invariant_unit
            and self.associative
            and self.unital
        )

    def failures(self) -> list[str]:
        out = []
        for name in (
            "module_valid", "self_invariant", "equivariance", "graded_mult",
            "braided_commutativity", "metric_invariance", "invariant_unit",
            "associative", "unital",
        ):
            if not getattr(self, name):
                out.append(name)
        if not self.metric.passed:
            out.append("metric")
        return out


def check_gfa(alg: GFrobeniusAlgebra) -> GfaReport:
    h = alg.module
    g = h.group
    d = h.dim
    c = alg.mult
    eta = alg.metric
    mod_rep = validate_module(h)
    metric_rep = check_metric(Metric(h, eta))

    def basis_product(a: int, b: int) -> Vec:
        return c[a][b]

    equivariance = True
    for gamma in g.elements():
        rho = h.action[gamma]
        for a in range(d):
            for b in range(d):
                lhs = [Fraction(0)] * d
                for i in range(d):
                    if rho[i][a] == 0:
                        continue
                    for j in range(d):
                        if rho[j][b] == 0:
                            continue
                        coef = rho[i][a] * rho[j][b]
                        for k in range(d):
                            lhs[k] += coef * c[i][j][k]
                rhs = linalg.mat_vec(rho, c[a][b])
                if tuple(lhs) != tuple(rhs):
                    equivariance = False

    graded = all(
        c[a][b][k] == 0
        for a in range(d)
        for b in range(d)
        for k in range(d)
        if h.degrees[k] != g.mul(h.degrees[a], h.degrees[b])
    )

    braided_comm = True
    for a in range(d):
        rho = h.action[g.inv(h.degrees[a])]
        for b in range(d):
            rhs = [Fraction(0)] * d
            for i in range(d):
                if rho[i][b] == 0:
                    continue
                for k in range(d):
                    rhs[k] += rho[i][b] * c[i][a][k]
            if tuple(rhs) != c[a][b]:
                braided_comm = False

    metric_inv = all(
        sum(c[a][b][k] * eta[k][x] for k in range(d))
        == sum(eta[a][k] * c[b][x][k] for k in range(d))
        for a in range(d)
        for b in range(d)
        for x in range(d)
    )

    unit_inv = all(
        linalg.mat_vec(h.action[gamma], alg.unit) == alg.unit for gamma in g.elements()
    )
    unit_in_e = all(
        alg.unit[j] == 0 for j in range(d) if h.degrees[j] != g.identity
    )

    associative = True
    for a in range(d):
        for b in range(d):
            ab = c[a][b]
            for x in range(d):
                lhs = [Fraction(0)] * d
                for k in range(d):
                    if ab[k] == 0:
                        continue
                    for l in range(d):
                        lhs[l] += ab[k] * c[k][x][l]
                rhs = [Fraction(0)] * d
                for k in range(d):
                    if c[b][x][k] == 0:
                        continue
                    for l in range(d):
                        rhs[l] += c[b][x][k] * c[a][k][l]
                if lhs != rhs:
                    associative = False

    unital = True
    for b in range(d):
        out = alg.product(alg.unit, tuple(Fraction(1) if i == b else Fraction(0) for i in range(d)))
        if out != tuple(Fraction(1) if i == b else Fraction(0) for i in range(d)):
            unital = False

    return GfaReport(
        module_valid=mod_rep.valid,
        self_invariant=mod_rep.self_invariant,
        metric=metric_rep,
        equivariance=equivariance,
        graded_mult=graded,
        braided_commutativity=braided_comm,
        metric_invariance=metric_inv,
        invariant_unit=unit_inv and unit_in_e,
        associative=associative,
        unital=unital,
    )


def gfa_from_cubic(h: GradedModule, eta: Mat, y3: Tensor, unit: Vec) -> GFrobeniusAlgebra:
    """Solve eta(v_a . v_b, v_k) = Y3(v_a, v_b, v_k) for the multiplication."""
    d = h.dim
    if y3.n != 3:
        raise DegreeMismatch("cubic form must have tensor degree 3")
    hd = dual_module(h)
    if not is_braided(hd, y3):
        raise DegreeMismatch("cubic form is not braid-invariant")
    for idx in y3.terms:
        if h.group.product(hd.degree_tuple(idx)) != h.group.identity:
            raise DegreeMismatch("cubic form has a component of nontrivial G-degree")
    try:
        eta_inv = linalg.mat_inv(eta)
    except ValueError:
        raise DegenerateMetric("metric is singular") from None
    mult = []
    for a in range(d):
        row = []
        for b in range(d):
            w = [y3.terms.get((k, b, a), Fraction(0)) for k in range(d)]
            row.append(linalg.mat_vec(eta_inv, w))
        mult.append(tuple(row))
    alg = GFrobeniusAlgebra(h, eta, tuple(mult), tuple(Fraction(x) for x in unit))
    for b in range(d):
        e_b = tuple(Fraction(1) if i == b else Fraction(0) for i in range(d))
        if alg.product(alg.unit, e_b) != e_b:
            raise UnitFails(f"unit fails on basis vector {b}")
    return alg


def cubic_form_of(alg: GFrobeniusAlgebra) -> Tensor:
    """Extract Y3(v_a, v_b, v_c) = eta(v_a . v_b, v_c) as a tensor on the dual."""
    d = alg.dim
    terms = {}
    for a in range(d):
        for b in range(d):
            for cc in range(d):
                val = sum(alg.mult[a][b][k] * alg.metric[k][cc] for k in range(d))
                if val != 0:
                    terms[(cc, b, a)] = val
    return Tensor(3, terms)


def subalgebras(alg: GFrobeniusAlgebra) -> tuple[GFrobeniusAlgebra, GFrobeniusAlgebra]:
    """Ordinary Frobenius algebras on the untwisted sector and on the invariants."""
    h = alg.module
    d = h.dim
    e_idx = h.untwisted_indices()
    pos = {j: p for p, j in enumerate(e_idx)}
    mult_e = tuple(
        tuple(tuple(alg.mult[a][b][k] for k in e_idx) for b in e_idx) for a in e_idx
    )
    eta_e = submatrix(alg.metric, e_idx, e_idx)
    unit_e = tuple(alg.unit[j] for j in e_idx)
    triv = trivial_group()
    sub_e = GFrobeniusAlgebra(trivial_graded_module(triv, len(e_idx)), eta_e, mult_e, unit_e)

    inv = invariants_basis(h)
    incl = tuple(tuple(v[i] for v in inv) for i in range(d))
    r = len(inv)
    mult_g = []
    for p in range(r):
        row = []
        for q in range(r):
            w = alg.product(inv[p], inv[q])
            row.append(linalg.solve_columns(incl, w))
        mult_g.append(tuple(row))
    eta_g = linalg.mat_mul(linalg.transpose(incl), linalg.mat_mul(alg.metric, incl))
    unit_g = linalg.solve_columns(incl, alg.unit)
    sub_g = GFrobeniusAlgebra(trivial_graded_module(triv, r), eta_g, tuple(mult_g), unit_g)
    return sub_e, sub_g


# -- pre-G-Frobenius-manifold checking ----------------------------------------


def _is_diagonal_module(h: GradedModule) -> bool:
    return all(
        h.action[g][i][j] == 0
        for g in h.group.elements()
        for i in range(h.dim)
        for j in range(h.dim)
        if i != j
    )


def poly_is_braided_diagonal(h: GradedModule, pot: Potential) -> bool:
    """Exact braid-invariance of a polarized potential over a diagonal module.

    For diagonal actions the braiding sends a monomial tensor to a signed
    reordering, so a symmetric form is invariant iff every pair of characters
    appearing together in a monomial act trivially on each other's degrees.
    """
    chi = h.action
    deg = h.degrees
    for exp in pot.poly.terms:
        support = [pot.names.index(v) for v, e in zip(pot.poly.vars, exp) if e]
        mult2 = [
            pot.names.index(v) for v, e in zip(pot.poly.vars, exp) if e >= 2
        ]
        for a in support:
            for b in support:
                if a != b and chi[deg[b]][a][a] != 1:
                    return False
        for a in mult2:
            if chi[deg[a]][a][a] != 1:
                return False
    return True


def poly_g_degree_filter(h: GradedModule, pot: Potential, g_target: int) -> bool:
    """Every monomial's product of coordinate degrees equals the target element."""
    g = h.group
    for exp in pot.poly.terms:
        total = g.identity
        for v, e in zip(pot.poly.vars, exp):
            j = pot.names.index(v)
            for _ in range(e):
                total = g.mul(total, h.degrees[j])
        if total != g_target:
            return False
    return True


def potential_is_braided(h: GradedModule, pot: Potential, tensor_degree_cap: int = 4) -> bool:
    """Braid-invariance of every homogeneous part of the potential.

    Diagonal modules are checked exactly at the polynomial level; otherwise
    each part up to the cap is polarized and checked against the generators.
    """
    hd = dual_module(h)
    if _is_diagonal_module(hd):
        return poly_is_braided_diagonal(hd, pot)
    top = min(pot.poly.total_degree(), tensor_degree_cap)
    for n in range(2, top + 1):
        t = form_from_poly(pot.poly, pot.names, n)
        if t and not is_braided(hd, t):
            return False
    return True


@dataclass(frozen=True)
class PreGfmReport:
    module_valid: bool
    self_invariant: bool
    metric: MetricReport
    braided: bool
    degree_filter: bool
    untwisted_potential: MultiPoly
    invariants_potential: MultiPoly
    wdvv_untwisted: WdvvReport
    wdvv_invariants: WdvvReport

    @property
    def passed(self) -> bool:
        return (
            self.module_valid
            and self.self_invariant
            and self.metric.passed
            and self.braided
            and self.degree_filter
            and self.wdvv_untwisted.passed
            and self.wdvv_invariants.passed
        )


def check_pre_gfm(h: GradedModule, eta: Mat, pot: Potential) -> PreGfmReport:
    """Restrict the potential to the untwisted and invariant sectors and run WDVV."""
    mod_rep = validate_module(h)
    metric_rep = check_metric(Metric(h, eta))
    hd = dual_module(h)
    braided = potential_is_braided(h, pot)
    filter_ok = poly_g_degree_filter(hd, pot, h.group.identity)

    e_idx = h.untwisted_indices()
    e_names = tuple(pot.names[j] for j in e_idx)
    other = [pot.names[j] for j in range(h.dim) if j not in e_idx]
    y_e = pot.poly.subst_zero([n for n in other if n in pot.poly.vars])
    wdvv_e = wdvv_check(Potential(e_names, y_e), submatrix(eta, e_idx, e_idx))

    inv = invariants_basis(h)
    incl = [[v[i] for v in inv] for i in range(h.dim)]
    s_names = tuple(f"s{b}" for b in range(len(inv)))
    y_g = linear_subst(pot.poly, pot.names, incl, s_names)
    eta_g = linalg.mat_mul(
        linalg.transpose(linalg.mat(incl)), linalg.mat_mul(eta, linalg.mat(incl))
    )
    wdvv_g = wdvv_check(Potential(s_names, y_g), eta_g)

    return PreGfmReport(
        module_valid=mod_rep.valid,
        self_invariant=mod_rep.self_invariant,
        metric=metric_rep,
        braided=braided,
        degree_filter=filter_ok,
        untwisted_potential=y_e,
        invariants_potential=y_g,
        wdvv_untwisted=wdvv_e,
        wdvv_invariants=wdvv_g,
    )


# -- assembling an order-two pre-Frobenius manifold from two ordinary ones -----


@dataclass(frozen=True)
class FmData:
    """One formal Frobenius manifold: coordinate names, flat metric, potential."""

    names: tuple[str, ...]
    metric: Mat
    potential: MultiPoly


@dataclass(frozen=True)
class Z2Assembly:
    module: GradedModule
    names: tuple[str, ...]
    metric: Mat
    potential: MultiPoly
    fixed_names: tuple[str, ...]
    sign_names: tuple[str, ...]
    twisted_names: tuple[str, ...]
    pre_gfm: PreGfmReport | None = field(repr=False)


def decompose_z2_potential(
    assembly_names: tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]],
    poly: MultiPoly,
) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Split a potential into (fixed-only, has-sign-factor, has-twisted-factor) parts."""
    _, v_names, g_names = assembly_names
    v_live = [n for n in v_names if n in poly.vars]
    g_live = [n for n in g_names if n in poly.vars]
    y_no_v = poly.subst_zero(v_live)
    y_no_g = poly.subst_zero(g_live)
    y_i = y_no_v.subst_zero([n for n in g_live if n in y_no_v.vars])
    y_v = poly - y_no_v
    y_g = poly - y_no_g
    if poly != y_i + y_v + y_g:
        raise BlockDegreeViolation("potential has a term mixing sign and twisted factors")
    return y_i, y_v, y_g


def assemble_z2(
    fe: FmData,
    fg: FmData,
    iota_e: Sequence[int],
    iota_g: Sequence[int],
    verify: bool = True,
) -> Z2Assembly:
    """Glue two Frobenius manifolds along a shared flat subspace.

    The embeddings are coordinate embeddings given by index lists; matched
    coordinates must carry the same name in both inputs.  The result is an
    order-two graded module with involution +1 / -1 / +1 on the fixed, sign
    and twisted blocks, block metric, and summed potential.  With verify the
    assembled data is rechecked end to end (restrictions and WDVV).
    """
    if len(iota_e) != len(iota_g):
        raise RestrictionMismatch("embeddings have different ranks")
    r = len(iota_e)
    for j in range(r):
        if fe.names[iota_e[j]] != fg.names[iota_g[j]]:
            raise RestrictionMismatch(
                f"shared coordinate {j} is named {fe.names[iota_e[j]]!r} vs {fg.names[iota_g[j]]!r}"
            )
    shared = [fe.names[iota_e[j]] for j in range(r)]
    v_names = [n for j, n in enumerate(fe.names) if j not in set(iota_e)]
    g_names = [n for j, n in enumerate(fg.names) if j not in set(iota_g)]
    if set(v_names) & set(g_names) or set(shared) & (set(v_names) | set(g_names)):
        raise RestrictionMismatch("coordinate names of the complements must be disjoint")

    eta_i_e = submatrix(fe.metric, iota_e, iota_e)
    eta_i_g = submatrix(fg.metric, iota_g, iota_g)
    if eta_i_e != eta_i_g:
        raise RestrictionMismatch("restricted metrics disagree on the shared subspace")
    v_idx = [j for j in range(len(fe.names)) if j not in set(iota_e)]
    g_idx = [j for j in range(len(fg.names)) if j not in set(iota_g)]
    if any(fe.metric[i][j] != 0 for i in iota_e for j in v_idx) or any(
        fg.metric[i][j] != 0 for i in iota_g for j in g_idx
    ):
        raise BlockDegreeViolation("metric blocks must be homogeneous: cross pairings found")

    y_e_restricted = fe.potential.subst_zero([n for n in v_names if n in fe.potential.vars])
    y_g_restricted = fg.potential.subst_zero([n for n in g_names if n in fg.potential.vars])
    if y_e_restricted != y_g_restricted:
        raise RestrictionMismatch("restricted potentials disagree on the shared subspace")
    for exp in fg.potential.terms:
        parity = sum(
            e for v, e in zip(fg.potential.vars, exp) if v in set(g_names)
        )
        if parity % 2:
            raise BlockDegreeViolation("potential has odd twisted degree")

    names = tuple(shared + v_names + g_names)
    nv, ng = len(v_names), len(g_names)
    group = cyclic_group(2)
    degrees = tuple([group.identity] * (r + nv) + [1 - group.identity] * ng)
    diag = [Fraction(1)] * r + [Fraction(-1)] * nv + [Fraction(1)] * ng
    rho_g = tuple(
        tuple(diag[i] if i == j else Fraction(0) for j in range(r + nv + ng))
        for i in range(r + nv + ng)
    )
    module = GradedModule(group, degrees, (linalg.identity(r + nv + ng), rho_g))

    dim = r + nv + ng
    eta = [[Fraction(0)] * dim for _ in range(dim)]
    for p in range(r):
        for q in range(r):
            eta[p][q] = eta_i_e[p][q]
    eta_v = submatrix(fe.metric, v_idx, v_idx)
    for p in range(nv):
        for q in range(nv):
            eta[r + p][r + q] = eta_v[p][q]
    eta_g = submatrix(fg.metric, g_idx, g_idx)
    for p in range(ng):
        for q in range(ng):
            eta[r + nv + p][r + nv + q] = eta_g[p][q]
    eta_m = tuple(tuple(row) for row in eta)

    y_total = fe.potential + (fg.potential - y_g_restricted)
    pot = Potential(names, y_total.with_vars(sorted(set(y_total.vars) | set(names))))

    report = check_pre_gfm(module, eta_m, pot) if verify else None
    return Z2Assembly(
        module=module,
        names=names,
        metric=eta_m,
        potential=pot.poly,
        fixed_names=tuple(shared),
        sign_names=tuple(v_names),
        twisted_names=tuple(g_names),
        pre_gfm=report,
    )
