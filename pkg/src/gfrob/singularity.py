"""Milnor rings and Frobenius structures of the A- and D-series singularities.

The one-variable family is w^{n+1}/(n+1); its miniversal unfolding is
F = z^{n+1}/(n+1) + k_{n-1} z^{n-1} + ... + k_0.  Tangent spaces are the
Jacobi rings Q[k][z] / (F'), with F' monic of degree n, so reduction is
parametric univariate division.  The residue pairing of two tangent vectors
is the sum over all poles of f g / F' dz, which for a monic F' equals the
coefficient of z^{n-1} in the reduction of f g.

Flat coordinates come from inverting z = w + t_{n-1}/w + ... + t_0/w^n in
F(z(w)) = w^{n+1}/(n+1): requiring the coefficients of w^{n-1}..w^0 to
vanish determines each unfolding coefficient a_i as a polynomial in t
(triangular, with linear term -t_i).  The potential is recovered from
Y_abc(t) = residue(dF/dt_a * dF/dt_b, dF/dt_c) by exact integration.

The two-variable family 1/2 x y^2 + x^{n-1}/(2n-2) is handled through its
Milnor ring and through the odd-coordinate restriction of the one-variable
potentials: the restriction plus the correction term -(1/2) a_0 t_*^2 gives
the potential on coordinates (t_even, t_*).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import BadIndex, IntegrabilityFailure
from .frobenius import GFrobeniusAlgebra, Potential
from .groups import cyclic_group
from .modules import GradedModule
from .poly import MultiPoly

# -- Milnor rings --------------------------------------------------------------


@dataclass(frozen=True)
class MilnorRing:
    """Quotient by the Jacobian ideal, with monomial basis and counit."""

    kind: str  # "A" or "D"
    n: int
    basis: tuple[str, ...]
    counit: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def multiply(self, p: int, q: int) -> tuple[Fraction, ...]:
        """Product of two basis vectors as a coordinate vector."""
        out = [Fraction(0)] * self.dim
        if self.kind == "A":
            s = p + q
            if s < self.n:
                out[s] = Fraction(1)
            return tuple(out)
        y = self.dim - 1
        if p == y and q == y:
            out[self.n - 2] = Fraction(-1)  # y^2 = -x^{n-2}
            return tuple(out)
        if p == y or q == y:
            other = q if p == y else p
            if other == 0:
                out[y] = Fraction(1)
            return tuple(out)  # x^a y = 0 for a >= 1
        s = p + q
        if s <= self.n - 2:
            out[s] = Fraction(1)
        return tuple(out)  # x^{n-1} = 0

    def metric(self) -> linalg.Mat:
        """Pairing (u, v) -> counit(u v)."""
        rows = []
        for p in range(self.dim):
            row = []
            for q in range(self.dim):
                prod = self.multiply(p, q)
                row.append(sum(c * e for c, e in zip(prod, self.counit)))
            rows.append(tuple(row))
        return tuple(rows)


def milnor_ring(kind: str, n: int) -> MilnorRing:
    if kind == "A":
        if n < 2:
            raise BadIndex("A-series needs n >= 2")
        basis = tuple("1" if i == 0 else f"z^{i}" for i in range(n))
        counit = tuple(Fraction(1) if i == n - 1 else Fraction(0) for i in range(n))
        return MilnorRing("A", n, basis, counit)
    if kind == "D":
        if n < 3:
            raise BadIndex("D-series needs n >= 3")
        basis = tuple(
            ["1"] + [f"x^{i}" for i in range(1, n - 1)] + ["y"]
        )
        counit = tuple(
            Fraction(1) if i == n - 2 else Fraction(0) for i in range(n)
        )
        return MilnorRing("D", n, basis, counit)
    raise BadIndex(f"unknown singularity kind {kind!r}")


# -- parametric Jacobi rings -----------------------------------------------------


ZPoly = list[MultiPoly]  # index = power of z, entries over the parameter ring


def _k_names(n: int) -> tuple[str, ...]:
    return tuple(f"k{i}" for i in range(n))


def zp_trim(f: ZPoly) -> ZPoly:
    while f and not f[-1]:
        f.pop()
    return f


def zp_mul(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> ZPoly:
    if not f or not g:
        return []
    out = [MultiPoly.zero() for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if not b:
                continue
            out[i + j] = out[i + j] + a * b
    return zp_trim(out)


def fprime_coeffs(n: int, unfolding: Sequence[MultiPoly]) -> ZPoly:
    """dF/dz = z^n + sum_i i * a_i z^{i-1} for F with coefficients `unfolding`."""
    out = [MultiPoly.zero() for _ in range(n + 1)]
    out[n] = MultiPoly.constant(1)
    for i in range(1, n):
        out[i - 1] = unfolding[i] * i
    return out


def zp_reduce(f: Sequence[MultiPoly], fprime: Sequence[MultiPoly]) -> ZPoly:
    """Remainder of division by the monic polynomial fprime."""
    n = len(fprime) - 1
    work = list(f)
    while len(work) > n:
        lead = work[-1]
        top = len(work) - 1
        if lead:
            for i in range(n + 1):
                if fprime[i]:
                    work[top - n + i] = work[top - n + i] - lead * fprime[i]
        work.pop()
    return zp_trim(work)


def jacobi_multiply(n: int, f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> ZPoly:
    """Product in Q[k][z] / (F'), F' = z^n + sum i k_i z^{i-1}."""
    ks = _k_names(n)
    unfolding = [MultiPoly.variable(ks[i]) for i in range(n)]
    return zp_reduce(zp_mul(f, g), fprime_coeffs(n, unfolding))


def residue_pair(n: int, f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> MultiPoly:
    """Global residue of f g / F' dz: coefficient of z^{n-1} after reduction."""
    ks = _k_names(n)
    unfolding = [MultiPoly.variable(ks[i]) for i in range(n)]
    red = zp_reduce(zp_mul(f, g), fprime_coeffs(n, unfolding))
    return red[n - 1] if len(red) >= n else MultiPoly.zero()


# -- flat coordinates --------------------------------------------------------------


def _t_names(n: int) -> tuple[str, ...]:
    return tuple(f"t_{i}" for i in range(n))


@dataclass(frozen=True)
class UnfoldingChart:
    """Unfolding coefficients as polynomials in flat coordinates, and back."""

    n: int
    t_names: tuple[str, ...]
    a_names: tuple[str, ...]
    a_of_t: tuple[MultiPoly, ...]
    t_of_a: tuple[MultiPoly, ...]

    def fprime_in_t(self) -> ZPoly:
        return fprime_coeffs(self.n, list(self.a_of_t))

    def df_dt(self, a: int) -> ZPoly:
        """dF/dt_a = sum_i (d a_i / d t_a) z^i as a z-polynomial over Q[t]."""
        out = []
        for i in range(self.n):
            p = self.a_of_t[i]
            out.append(p.diff(self.t_names[a]) if self.t_names[a] in p.vars else MultiPoly.zero())
        return zp_trim(out)


def flat_coordinates(n: int) -> UnfoldingChart:
    """Invert the Laurent ansatz z = w + t_{n-1}/w + ... + t_0/w^n order by order."""
    if n < 2:
        raise BadIndex("flat_coordinates needs n >= 2")
    tn = _t_names(n)
    an = tuple(f"a{i}" for i in range(n))

    # Laurent polynomials in w with Q[t] coefficients, as {exponent: poly}.
    z: dict[int, MultiPoly] = {1: MultiPoly.constant(1)}
    for j in range(n):
        z[j - n] = MultiPoly.variable(tn[j])

    floor = -(n + 1)

    def lmul(p: dict[int, MultiPoly], q: dict[int, MultiPoly]) -> dict[int, MultiPoly]:
        out: dict[int, MultiPoly] = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = e1 + e2
                if e < floor:
                    continue
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return {e: c for e, c in out.items() if c}

    powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(1)}, z]
    for _ in range(2, n + 2):
        powers.append(lmul(powers[-1], z))

    # Solve for a_m, top coefficient first: the w^m coefficient of
    # z^{n+1}/(n+1) + sum_i a_i z^i must vanish for m = n-1 .. 0.
    a_of_t: list[MultiPoly | None] = [None] * n
    lead = powers[n + 1]
    for m in range(n - 1, -1, -1):
        acc = lead.get(m, MultiPoly.zero()) * Fraction(1, n + 1)
        for i in range(m + 1, n):
            coeff = powers[i].get(m)
            if coeff:
                acc = acc + a_of_t[i] * coeff
        # a_m enters through a_m * z^m whose w^m coefficient is 1.
        a_of_t[m] = -acc

    # Structural check: linear term -t_m, higher terms only in t_{m+2}..t_{n-1}.
    for m in range(n):
        p = a_of_t[m]
        if p.coefficient({tn[m]: 1}) != Fraction(-1):
            raise IntegrabilityFailure(f"a_{m} has linear coefficient != -1 on t_{m}")
        allowed = {tn[j] for j in range(m + 2, n)}
        for exp in p.terms:
            support = {v for v, e in zip(p.vars, exp) if e}
            if sum(exp) == 1 and support != {tn[m]}:
                raise IntegrabilityFailure(f"a_{m} has a stray linear term")
            if sum(exp) > 1 and not support <= allowed:
                raise IntegrabilityFailure(f"a_{m} has higher terms outside t_{m + 2}..t_{n - 1}")

    # Invert the triangular system: t_m = -a_m + (a_m + t_m)(t_{m+2}, ...).
    t_of_a: list[MultiPoly | None] = [None] * n
    for m in range(n - 1, -1, -1):
        h = a_of_t[m] + MultiPoly.variable(tn[m])  # higher-order part, in t
        expr = -MultiPoly.variable(an[m]) + h
        for j in range(n - 1, m, -1):
            if tn[j] in expr.vars:
                expr = expr.subst(tn[j], t_of_a[j])
        t_of_a[m] = expr

    return UnfoldingChart(
        n=n,
        t_names=tn,
        a_names=an,
        a_of_t=tuple(a_of_t),
        t_of_a=tuple(t_of_a),
    )


def flat_metric(n: int) -> linalg.Mat:
    """Residue metric in flat coordinates: eta_ij = [i + j == n - 1]."""
    return tuple(
        tuple(Fraction(1) if i + j == n - 1 else Fraction(0) for j in range(n))
        for i in range(n)
    )


def flat_metric_entries(chart: UnfoldingChart) -> list[list[MultiPoly]]:
    """eta(dF/dt_i, dF/dt_j) as polynomials in t (flatness: all constant)."""
    n = chart.n
    fp = chart.fprime_in_t()
    out = []
    for i in range(n):
        row = []
        dfi = chart.df_dt(i)
        for j in range(n):
            red = zp_reduce(zp_mul(dfi, chart.df_dt(j)), fp)
            row.append(red[n - 1] if len(red) >= n else MultiPoly.zero())
        out.append(row)
    return out


# -- potentials --------------------------------------------------------------------


def _euler_integrate(names: Sequence[str], third: dict[tuple[int, int, int], MultiPoly]) -> MultiPoly:
    """Recover the potential from its third partials (terms of degree >= 3 only)."""
    d = len(names)
    p_total = MultiPoly.zero(names)
    for (a, b, c), y in third.items():
        if not y:
            continue
        perms = {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}
        mono = MultiPoly.variable(names[a]) * MultiPoly.variable(names[b]) * MultiPoly.variable(names[c])
        p_total = p_total + y * mono * len(perms)
    out = MultiPoly.zero(names)
    for exp, coef in p_total.terms.items():
        deg = sum(exp)
        out = out + MultiPoly.monomial(
            p_total.vars, exp, coef / (deg * (deg - 1) * (deg - 2))
        )
    return out


def potential_A(n: int) -> Potential:
    """Potential of the one-variable unfolding in flat coordinates, degree <= n+2."""
    if n < 2:
        raise BadIndex("potential_A needs n >= 2")
    chart = flat_coordinates(n)
    fp = chart.fprime_in_t()
    dfs = [chart.df_dt(a) for a in range(n)]
    third: dict[tuple[int, int, int], MultiPoly] = {}
    for a in range(n):
        for b in range(a, n):
            ab = zp_mul(dfs[a], dfs[b])
            for c in range(b, n):
                red = zp_reduce(zp_mul(ab, dfs[c]), fp)
                third[(a, b, c)] = red[n - 1] if len(red) >= n else MultiPoly.zero()

    phi = _euler_integrate(chart.t_names, third)
    pot = Potential(chart.t_names, phi)
    for (a, b, c), y in third.items():
        if pot.third(a, b, c) != y:
            raise IntegrabilityFailure(f"third partials do not integrate at {(a, b, c)}")
    return pot


def potential_B(m: int) -> Potential:
    """Restriction of the (2m-1)-variable potential to even flat coordinates."""
    if m < 2:
        raise BadIndex("potential_B needs m >= 2")
    pa = potential_A(2 * m - 1)
    odd = [pa.names[i] for i in range(1, 2 * m - 1, 2) if pa.names[i] in pa.poly.vars]
    names = tuple(pa.names[i] for i in range(0, 2 * m - 1, 2))
    return Potential(names, pa.poly.subst_zero(odd))


TSTAR = "t_*"


def potential_D(n: int) -> Potential:
    """Two-variable family: add -(1/2) a_0 t_*^2, then drop odd coordinates."""
    if n < 3:
        raise BadIndex("potential_D needs n >= 3")
    m = 2 * n - 3
    pa = potential_A(m)
    chart = flat_coordinates(m)
    tstar = MultiPoly.variable(TSTAR)
    full = pa.poly + chart.a_of_t[0] * tstar * tstar * Fraction(-1, 2)
    odd = [chart.t_names[i] for i in range(1, m, 2) if chart.t_names[i] in full.vars]
    names = tuple([chart.t_names[i] for i in range(0, m, 2)] + [TSTAR])
    return Potential(names, full.subst_zero(odd))


def potential_D_metric(n: int) -> linalg.Mat:
    """Flat metric on (t_0, t_2, ..., t_{2n-4}, t_*)."""
    rows = []
    for p in range(n):
        row = []
        for q in range(n):
            if p < n - 1 and q < n - 1:
                row.append(Fraction(1) if 2 * p + 2 * q == 2 * n - 4 else Fraction(0))
            elif p == n - 1 and q == n - 1:
                row.append(Fraction(-1))
            else:
                row.append(Fraction(0))
        rows.append(tuple(row))
    return tuple(rows)


# -- the order-two orbifold objects --------------------------------------------


def z2_frobenius_algebra(n: int) -> GFrobeniusAlgebra:
    """The order-two Frobenius algebra C[z,y]/(z^{2n-3}, yz, y^2 + z^{2n-4}).

    Basis ordered (1, z^2, ..., z^{2n-4}, z, z^3, ..., z^{2n-5}, y); the
    involution fixes even powers and y and negates odd powers; the metric is
    anti-diagonal on the even and odd blocks with eta(y, y) = -1.
    """
    if n < 3:
        raise BadIndex("z2_frobenius_algebra needs n >= 3")
    group = cyclic_group(2)
    dim = 2 * n - 2
    even = list(range(0, 2 * n - 3, 2))  # z-powers in the fixed block
    odd = list(range(1, 2 * n - 4, 2))  # z-powers in the sign block
    powers = even + odd
    pos_of_power = {p: i for i, p in enumerate(powers)}
    y = dim - 1

    degrees = tuple([0] * (dim - 1) + [1])
    signs = [Fraction(1)] * len(even) + [Fraction(-1)] * len(odd) + [Fraction(1)]
    rho_g = tuple(
        tuple(signs[i] if i == j else Fraction(0) for j in range(dim)) for i in range(dim)
    )
    module = GradedModule(group, degrees, (linalg.identity(dim), rho_g))

    eta = [[Fraction(0)] * dim for _ in range(dim)]
    for i, p in enumerate(powers):
        for j, q in enumerate(powers):
            if p + q == 2 * n - 4:
                eta[i][j] = Fraction(1)
    eta[y][y] = Fraction(-1)

    mult = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, p in enumerate(powers):
        for j, q in enumerate(powers):
            if p + q <= 2 * n - 4:
                mult[i][j][pos_of_power[p + q]] = Fraction(1)
    for i, p in enumerate(powers):
        if p == 0:
            mult[i][y][y] = Fraction(1)
            mult[y][i][y] = Fraction(1)
        # y z^p = 0 for p >= 1
    mult[y][y][pos_of_power[2 * n - 4]] = Fraction(-1)

    unit = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(dim))
    return GFrobeniusAlgebra(
        module,
        tuple(tuple(row) for row in eta),
        tuple(tuple(tuple(v) for v in row) for row in mult),
        unit,
    )


@dataclass(frozen=True)
class Z2Manifold:
    """Assembled order-two Frobenius manifold with its verification reports."""

    n: int
    assembly: "Z2Assembly"
    algebra: GFrobeniusAlgebra  # the polynomial-ring model at the origin
    origin_algebra: GFrobeniusAlgebra  # from the cubic part of the potential
    matches_algebra: bool
    twisted_cubic: MultiPoly

    @property
    def potential(self) -> MultiPoly:
        return self.assembly.potential

    @property
    def names(self) -> tuple[str, ...]:
        return self.assembly.names


def z2_frobenius_manifold(n: int, check_wdvv: bool = True) -> Z2Manifold:
    """Glue the (2n-3)-variable and two-variable manifolds over their shared block.

    The degree-3 part of the assembled potential, rescaled by 3! and
    transported along basis vector -> -(coordinate vector), must reproduce
    z2_frobenius_algebra(n); check_wdvv additionally runs the full
    associativity verification of both restrictions.
    """
    from .braided import form_from_poly
    from .frobenius import FmData, assemble_z2, gfa_from_cubic

    if n < 3:
        raise BadIndex("z2_frobenius_manifold needs n >= 3")
    m = 2 * n - 3
    pa = potential_A(m)
    pd = potential_D(n)
    fe = FmData(pa.names, flat_metric(m), pa.poly)
    fg = FmData(pd.names, potential_D_metric(n), pd.poly)
    iota_e = list(range(0, m, 2))
    iota_g = list(range(n - 1))
    assembly = assemble_z2(fe, fg, iota_e, iota_g, verify=check_wdvv)

    algebra = z2_frobenius_algebra(n)
    cubic_poly = assembly.potential.homogeneous_part(3)
    y3 = form_from_poly(cubic_poly, assembly.names, 3).scale(6)
    dim = 2 * n - 2
    unit = tuple(Fraction(-1) if i == 0 else Fraction(0) for i in range(dim))
    origin_algebra = gfa_from_cubic(assembly.module, assembly.metric, y3, unit)

    # Transport along e_a -> -e_a: same metric, negated structure constants.
    matches = origin_algebra.metric == algebra.metric and all(
        origin_algebra.mult[a][b][k] == -algebra.mult[a][b][k]
        for a in range(dim)
        for b in range(dim)
        for k in range(dim)
    )
    if TSTAR in cubic_poly.vars:
        twisted = cubic_poly - cubic_poly.subst_zero([TSTAR])
    else:
        twisted = MultiPoly.zero(cubic_poly.vars)
    return Z2Manifold(
        n=n,
        assembly=assembly,
        algebra=algebra,
        origin_algebra=origin_algebra,
        matches_algebra=matches,
        twisted_cubic=twisted,
    )
