"""Exact scalars, sparse polynomials, multi-indices, and the Koszul sign engine.

Everything downstream (multivectors, forms, cochains, the deformation
solver) is built on the primitives in this module:

* scalars are ``fractions.Fraction`` — always reduced, exact, hashable;
* a polynomial is a sparse dict mapping an exponent tuple to a nonzero
  coefficient; the zero polynomial is the empty dict;
* the Koszul sign engine computes the sign a permutation of graded objects
  picks up, with the convention that transposing objects of degrees p and q
  contributes ``(-1)**(p*q)``.

All operations are pure: inputs are never mutated, outputs are freshly
built dicts in canonical form (no explicit zero coefficients are ever
stored).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

Exponents = Tuple[int, ...]
Poly = Dict[Exponents, Fraction]

__all__ = [
    "Exponents",
    "Poly",
    "VarContext",
    "format_rat",
    "grlex_key",
    "koszul_sign",
    "koszul_unshuffle_sign",
    "monomials_upto",
    "parse_rat",
    "partial_derive",
    "poly_add",
    "poly_const",
    "poly_eval_linear",
    "poly_from_terms",
    "poly_is_zero",
    "poly_mul",
    "poly_neg",
    "poly_scale",
    "poly_sub",
    "poly_total_degree",
    "poly_var",
    "poly_zero",
]


@dataclass(frozen=True)
class VarContext:
    """An ordered tuple of distinct variable names (the coordinate chart)."""

    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be distinct: {self.names!r}")

    @property
    def n(self) -> int:
        return len(self.names)


def poly_zero() -> Poly:
    return {}


def poly_const(n: int, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {(0,) * n: c}


def poly_var(n: int, i: int) -> Poly:
    """The coordinate polynomial x_i (0-based index)."""
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for n={n}")
    e = [0] * n
    e[i] = 1
    return {tuple(e): Fraction(1)}


def poly_from_terms(n: int, terms: Iterable[Tuple[object, Exponents]]) -> Poly:
    """Build a polynomial from (coefficient, exponents) pairs, canonicalizing."""
    out: Poly = {}
    for c, exps in terms:
        c = Fraction(c)
        exps = tuple(exps)
        if len(exps) != n:
            raise ValueError(f"exponent tuple {exps!r} has wrong length (n={n})")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps!r}")
        acc = out.get(exps, _ZERO) + c
        if acc:
            out[exps] = acc
        else:
            out.pop(exps, None)
    return out


_ZERO = Fraction(0)


def poly_is_zero(p: Poly) -> bool:
    return not p


def _check_compatible(p: Poly, q: Poly) -> None:
    if p and q:
        kp = next(iter(p))
        kq = next(iter(q))
        if len(kp) != len(kq):
            raise ValueError("polynomials built over different variable counts")


def poly_add(p: Poly, q: Poly) -> Poly:
    _check_compatible(p, q)
    out = dict(p)
    for exps, c in q.items():
        acc = out.get(exps, _ZERO) + c
        if acc:
            out[exps] = acc
        else:
            out.pop(exps, None)
    return out


def poly_neg(p: Poly) -> Poly:
    return {exps: -c for exps, c in p.items()}


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {exps: c * v for exps, v in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    _check_compatible(p, q)
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            exps = tuple(a + b for a, b in zip(e1, e2))
            acc = out.get(exps, _ZERO) + c1 * c2
            if acc:
                out[exps] = acc
            else:
                out.pop(exps, None)
    return out


def partial_derive(p: Poly, i: int) -> Poly:
    """Exact partial derivative with respect to the i-th variable."""
    out: Poly = {}
    for exps, c in p.items():
        if not 0 <= i < len(exps):
            raise IndexError(f"variable index {i} out of range")
        e = exps[i]
        if e == 0:
            continue
        new = exps[:i] + (e - 1,) + exps[i + 1 :]
        acc = out.get(new, _ZERO) + c * e
        if acc:
            out[new] = acc
        else:
            out.pop(new, None)
    if not p:
        return {}
    return out


def poly_total_degree(p: Poly) -> int:
    """Total degree; -1 for the zero polynomial."""
    if not p:
        return -1
    return max(sum(e) for e in p)


def poly_eval_linear(p: Poly, point: Sequence[Fraction]) -> Fraction:
    """Evaluate p at a rational point (used only by small diagnostics)."""
    total = Fraction(0)
    for exps, c in p.items():
        v = c
        for x, e in zip(point, exps):
            v *= Fraction(x) ** e
        total += v
    return total


# ---------------------------------------------------------------------------
# Koszul sign engine


def koszul_sign(degrees: Sequence[int], perm: Sequence[int]) -> int:
    """Sign picked up by permuting graded objects.

    ``perm[i]`` is the original position of the object landing at slot i;
    the sign is the product of ``(-1)**(d_a * d_b)`` over every inversion,
    i.e. every pair moved past each other.
    """
    k = len(degrees)
    if len(perm) != k:
        raise ValueError(f"permutation length {len(perm)} != degree count {k}")
    exponent = 0
    for i in range(k):
        di = degrees[perm[i]]
        if di % 2 == 0:
            continue
        for j in range(i + 1, k):
            if perm[i] > perm[j] and degrees[perm[j]] % 2:
                exponent += 1
    return -1 if exponent % 2 else 1


def koszul_unshuffle_sign(degrees: Sequence[int], subset: Sequence[int]) -> int:
    """Sign for pulling the objects at the given sorted positions to the front.

    Relative order is preserved inside and outside the subset, so the sign
    is the product of (-1)^{d_i d_j} over subset members i jumped past
    earlier non-members j.
    """
    exponent = 0
    chosen = set(subset)
    for i in subset:
        if degrees[i] % 2 == 0:
            continue
        for j in range(i):
            if j not in chosen and degrees[j] % 2:
                exponent += 1
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# enumeration, canonical ordering, formatting


def grlex_key(exps: Exponents) -> Tuple[int, Exponents]:
    """Graded-lexicographic sort key (total degree first, then lex)."""
    return (sum(exps), exps)


def monomials_upto(n: int, max_degree: int) -> Iterator[Exponents]:
    """All exponent tuples with total degree <= max_degree, grlex order."""
    if n == 0:
        yield ()
        return

    def gen(d: int) -> Iterator[Exponents]:
        def rec(rem: int, slots: int) -> Iterator[List[int]]:
            if slots == 1:
                yield [rem]
                return
            for lead in range(rem, -1, -1):
                for tail in rec(rem - lead, slots - 1):
                    yield [lead] + tail

        for body in rec(d, n):
            yield tuple(body)

    for d in range(max_degree + 1):
        yield from sorted(gen(d))


def format_rat(c: Fraction) -> str:
    """Serialize a rational as ``p`` or ``p/q`` (canonical reduced form)."""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_rat(s: str) -> Fraction:
    """Parse ``p`` or ``p/q`` with q > 0; rejects anything else."""
    s = s.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            d = int(den)
            if d <= 0:
                raise ValueError
            return Fraction(int(num), d)
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational: {s!r}") from None
