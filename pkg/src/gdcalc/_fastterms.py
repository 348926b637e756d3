"""Low-overhead term engine backing the exhaustive sweep suites.

Multivector terms are keyed by (frame bitmask, exponent tuple) with plain
integer coefficients; frame sign bookkeeping is table-driven per context.
Everything here reimplements, at term granularity, operations that already
exist on PolyVector/Cochain — the slow structures remain the reference
route, and the test suite pins this module against them on randomized
inputs.  Sweep drivers are the only intended consumers.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactcore import Exponents
from .polyvec import DiffForm, PolyVector, mv_make

TermKey = Tuple[int, Exponents]
TermMap = Dict[TermKey, int]  # coefficients are ints (Fractions tolerated)

_PERMS = {k: tuple(itertools.permutations(range(k))) for k in range(7)}


class FastCtx:
    """Per-dimension sign tables for bitmask frames."""

    __slots__ = ("n", "pop", "bits", "merge", "zero_exps", "_dcache", "_ecache")

    def __init__(self, n: int):
        self.n = n
        size = 1 << n
        self.pop = [bin(m).count("1") for m in range(size)]
        self.bits = [tuple(i for i in range(n) if m >> i & 1) for m in range(size)]
        merge: List[List[int]] = [[0] * size for _ in range(size)]
        for m1 in range(size):
            for m2 in range(size):
                if m1 & m2:
                    continue
                inv = 0
                for i in self.bits[m1]:
                    inv += self.pop[m2 & ((1 << i) - 1)]
                merge[m1][m2] = -1 if inv & 1 else 1
        self.merge = merge
        self.zero_exps = (0,) * n
        self._dcache: Dict[Tuple[Exponents, int], Optional[Tuple[int, Exponents]]] = {}
        self._ecache: Dict[Tuple[Exponents, Exponents], Exponents] = {}

    def mask_of(self, frame: Sequence[int]) -> int:
        m = 0
        for i in frame:
            m |= 1 << i
        return m

    def derive(self, exps: Exponents, i: int) -> Optional[Tuple[int, Exponents]]:
        key = (exps, i)
        hit = self._dcache.get(key, False)
        if hit is not False:
            return hit
        e = exps[i]
        out = None if e == 0 else (e, exps[:i] + (e - 1,) + exps[i + 1 :])
        self._dcache[key] = out
        return out

    def eadd(self, e1: Exponents, e2: Exponents) -> Exponents:
        key = (e1, e2)
        hit = self._ecache.get(key)
        if hit is None:
            hit = tuple(a + b for a, b in zip(e1, e2))
            self._ecache[key] = hit
        return hit


# ---------------------------------------------------------------------------
# conversion


def to_fast(fc: FastCtx, v: PolyVector) -> TermMap:
    out: TermMap = {}
    for frame, poly in v.terms.items():
        m = fc.mask_of(frame)
        for exps, c in poly.items():
            out[(m, exps)] = int(c) if c.denominator == 1 else c
    return out


def from_fast(fc: FastCtx, ctx, tm: TermMap) -> PolyVector:
    grouped: Dict[Tuple[int, ...], Dict[Exponents, Fraction]] = {}
    for (m, exps), c in tm.items():
        if not c:
            continue
        grouped.setdefault(fc.bits[m], {})[exps] = Fraction(c)
    return mv_make(ctx, list(grouped.items()))


def tm_is_zero(tm: TermMap) -> bool:
    return all(not c for c in tm.values())


def tm_equal(a: TermMap, b: TermMap) -> bool:
    for k, c in a.items():
        if c != b.get(k, 0):
            return False
    for k, c in b.items():
        if c and k not in a:
            return False
    return True


def tm_scale(tm: TermMap, s) -> TermMap:
    return {k: c * s for k, c in tm.items()} if s else {}


def tm_add_into(acc: TermMap, tm: TermMap, s=1) -> None:
    for k, c in tm.items():
        v = acc.get(k, 0) + c * s
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


# ---------------------------------------------------------------------------
# Schouten bracket and the structure operation at term level


def _half_into(fc: FastCtx, m1, e1, c1, m2, e2, c2, sign, acc: TermMap) -> None:
    """Accumulate sign * D(a, b) for single terms a, b."""
    merge = fc.merge
    pop = fc.pop
    k1m1 = fc.pop[m1] - 1
    for i in fc.bits[m1]:
        d = fc.derive(e2, i)
        if d is None:
            continue
        factor, e2d = d
        im = 1 << i
        red = m1 ^ im
        ms = merge[red][m2]
        if not ms:
            continue
        # right derivative at position pos carries (-1)^(k-pos-1)
        s = sign * ms * factor
        if (k1m1 - pop[red & (im - 1)]) & 1:
            s = -s
        key = (red | m2, fc.eadd(e1, e2d))
        v = acc.get(key, 0) + c1 * c2 * s
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def schouten_terms(fc: FastCtx, A: TermMap, B: TermMap) -> TermMap:
    """[A, B] mirroring the PolyVector route term by term."""
    acc: TermMap = {}
    for (m1, e1), c1 in A.items():
        for (m2, e2), c2 in B.items():
            _half_into(fc, m1, e1, c1, m2, e2, c2, 1, acc)
            flip = -1 if ((fc.pop[m1] - 1) * (fc.pop[m2] - 1)) & 1 else 1
            _half_into(fc, m2, e2, c2, m1, e1, c1, -flip, acc)
    return acc


def m_terms(fc: FastCtx, A: TermMap, B: TermMap, deg_a: int) -> TermMap:
    """m(a, b) = (-1)^{|a|-1}[a, b] for homogeneous a of degree deg_a."""
    out = schouten_terms(fc, A, B)
    if (deg_a - 1) & 1:
        return {k: -c for k, c in out.items()}
    return out


# ---------------------------------------------------------------------------
# graded signs


def koszul_sign_fast(degs: Sequence[int], perm: Sequence[int]) -> int:
    exponent = 0
    k = len(perm)
    for i in range(k):
        pi = perm[i]
        if degs[pi] & 1:
            for j in range(i + 1, k):
                pj = perm[j]
                if pi > pj and degs[pj] & 1:
                    exponent += 1
    return -1 if exponent & 1 else 1


def unshuffle_sign_fast(degs: Sequence[int], subset: Sequence[int]) -> int:
    exponent = 0
    chosen = set(subset)
    for i in subset:
        if degs[i] & 1:
            for j in range(i):
                if j not in chosen and degs[j] & 1:
                    exponent += 1
    return -1 if exponent & 1 else 1


# ---------------------------------------------------------------------------
# the contraction cochain at term level


def form_to_fast(fc: FastCtx, omega: DiffForm) -> Dict[Tuple[int, Exponents], int]:
    out: Dict[Tuple[int, Exponents], int] = {}
    for coframe, poly in omega.terms.items():
        m = fc.mask_of(coframe)
        for exps, c in poly.items():
            out[(m, exps)] = int(c) if c.denominator == 1 else c
    return out


def phi_eval(
    fc: FastCtx,
    form_terms: Dict[Tuple[int, Exponents], int],
    args: Sequence[TermMap],
    degs: Sequence[int],
) -> TermMap:
    """Value of the degree-k contraction cochain on homogeneous arguments.

    Signs mirror the evaluator route: Koszul sign of the permutation on the
    argument degrees times (-1)^{sum (k-1-pos)*deg(sigma(pos))}, then the
    left-to-right wedge of single-coordinate contractions.
    """
    k = len(args)
    merge = fc.merge
    pop = fc.pop
    total: TermMap = {}
    for (comask, fexps), fcoeff in form_terms.items():
        cobits = fc.bits[comask]
        if len(cobits) != k:
            raise ValueError("form degree does not match argument count")
        # tab[pos][slot]: contractions of coordinate cobits[pos] against slot
        tab = []
        skip = False
        for j in cobits:
            jb = 1 << j
            low = jb - 1
            row = []
            for a in args:
                lst = [
                    (m ^ jb, e, -c if pop[m & low] & 1 else c)
                    for (m, e), c in a.items()
                    if m & jb
                ]
                row.append(lst)
            if not any(row):
                skip = True
                break
            tab.append(row)
        if skip:
            continue
        # enumerate only slot assignments with nonzero contractions everywhere
        cands = [tuple(s for s in range(k) if tab[pos][s]) for pos in range(k)]
        for sigma in itertools.product(*cands):
            if len(set(sigma)) != k:
                continue
            exponent = 0
            for pos in range(k):
                exponent += (k - 1 - pos) * degs[sigma[pos]]
            s0 = koszul_sign_fast(degs, sigma) * (-1 if exponent & 1 else 1)
            prods = [(0, fexps, fcoeff * s0)]
            for pos in range(k):
                r = tab[pos][sigma[pos]]
                nxt = []
                for am, ae, ac in prods:
                    for bm, be, bc in r:
                        ms = merge[am][bm]
                        if ms:
                            nxt.append((am | bm, fc.eadd(ae, be), ac * bc * ms))
                prods = nxt
                if not prods:
                    break
            for m, e, c in prods:
                key = (m, e)
                v = total.get(key, 0) + c
                if v:
                    total[key] = v
                else:
                    total.pop(key, None)
    return total
