"""Sparse multivariate polynomials over exact rationals.

A MultiPoly stores an ordered variable tuple (lexicographically sorted by
name, which fixes a canonical serialization) and a map from dense exponent
vectors to nonzero Fraction coefficients.  Binary operations align variable
sets by name.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import UnknownVariable

Scalar = Union[int, Fraction]


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Scalar]):
        order = tuple(sorted(variables))
        if len(set(order)) != len(order):
            raise ValueError("duplicate variable names")
        if order != tuple(variables):
            remap = [order.index(v) for v in variables]
            fixed: dict[tuple[int, ...], Fraction] = {}
            for exp, c in terms.items():
                new = [0] * len(order)
                for pos, e in zip(remap, exp):
                    new[pos] = e
                fixed[tuple(new)] = fixed.get(tuple(new), Fraction(0)) + _fr(c)
            terms = fixed
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in terms.items():
            if len(exp) != len(order):
                raise ValueError("exponent vector length mismatch")
            c = _fr(c)
            if c != 0:
                clean[tuple(exp)] = c
        object.__setattr__(self, "vars", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, c: Scalar, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {tuple([0] * len(variables)): _fr(c)})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls(variables, {tuple(exps): _fr(c)})

    # -- alignment -----------------------------------------------------

    def with_vars(self, variables: Sequence[str]) -> "MultiPoly":
        """Reexpress over a superset of variables (sorted internally)."""
        target = tuple(sorted(variables))
        missing = set(self.vars) - set(target)
        if missing:
            raise UnknownVariable(f"cannot drop live variables {sorted(missing)}")
        pos = [target.index(v) for v in self.vars]
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(target)
            for p, e in zip(pos, exp):
                new[p] = e
            terms[tuple(new)] = c
        return MultiPoly(target, terms)

    @staticmethod
    def _aligned(a: "MultiPoly", b: "MultiPoly"):
        if a.vars == b.vars:
            return a, b
        union = tuple(sorted(set(a.vars) | set(b.vars)))
        return a.with_vars(union), b.with_vars(union)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.vars)
        a, b = MultiPoly._aligned(self, other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.vars)
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _fr(other)
            return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})
        a, b = MultiPoly._aligned(self, other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = MultiPoly._aligned(self, other)
        return a.terms == b.terms

    def __hash__(self):
        live = self.compact()
        return hash((live.vars, tuple(sorted(live.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- calculus and substitution --------------------------------------

    def _var_pos(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def diff(self, name: str) -> "MultiPoly":
        if name not in self.vars:
            raise UnknownVariable(name)
        i = self.vars.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            new = tuple(new)
            terms[new] = terms.get(new, Fraction(0)) + c * exp[i]
        return MultiPoly(self.vars, terms)

    def subst(self, name: str, value) -> "MultiPoly":
        """Substitute a variable by a polynomial or scalar."""
        i = self._var_pos(name)
        if not isinstance(value, MultiPoly):
            value = MultiPoly.constant(value)
        rest_vars = tuple(v for v in self.vars if v != name)
        out = MultiPoly.zero(rest_vars)
        powers: dict[int, MultiPoly] = {0: MultiPoly.constant(1, rest_vars)}
        max_e = max((e[i] for e in self.terms), default=0)
        for k in range(1, max_e + 1):
            powers[k] = powers[k - 1] * value
        for exp, c in self.terms.items():
            rest = tuple(e for j, e in enumerate(exp) if j != i)
            out = out + MultiPoly.monomial(rest_vars, rest, c) * powers[exp[i]]
        return out

    def subst_zero(self, names: Iterable[str]) -> "MultiPoly":
        """Set the given variables to zero (keeping them in the variable list)."""
        idx = [self._var_pos(n) for n in names]
        terms = {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in idx)}
        return MultiPoly(self.vars, terms)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        return MultiPoly(new_vars, dict(self.terms))

    def eval(self, point: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        for exp, c in self.terms.items():
            val = c
            for v, e in zip(self.vars, exp):
                if e:
                    val *= _fr(point[v]) ** e
            total += val
        return total

    # -- structure -------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_term(self) -> Fraction:
        return self.terms.get(tuple([0] * len(self.vars)), Fraction(0))

    def coefficient(self, assignment: Mapping[str, int]) -> Fraction:
        exp = tuple(assignment.get(v, 0) for v in self.vars)
        return self.terms.get(exp, Fraction(0))

    def compact(self) -> "MultiPoly":
        """Drop variables that never occur with positive exponent."""
        live = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        variables = tuple(self.vars[i] for i in live)
        terms = {tuple(e[i] for i in live): c for e, c in self.terms.items()}
        return MultiPoly(variables, terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, exp) if e
            )
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(bits)


def linear_subst(
    p: MultiPoly,
    old_names: Sequence[str],
    matrix: Sequence[Sequence[Fraction]],
    new_names: Sequence[str],
) -> MultiPoly:
    """Substitute old_j -> sum_b matrix[j][b] * new_b."""
    live = [j for j, name in enumerate(old_names) if name in p.vars]
    images = {
        j: sum(
            (MultiPoly.monomial(new_names, tuple(1 if k == b else 0 for k in range(len(new_names))), matrix[j][b])
             for b in range(len(new_names)) if matrix[j][b] != 0),
            MultiPoly.zero(new_names),
        )
        for j in live
    }
    out = p.rename({old_names[j]: "#" + old_names[j] for j in live})
    for j in live:
        out = out.subst("#" + old_names[j], images[j])
    return out
