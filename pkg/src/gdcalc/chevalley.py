"""Cochain calculus on shifted multivector fields, and the contraction map.

A cochain of arity k is a k-linear, graded-symmetric map from multivector
fields to multivector fields. Cochains are carried as evaluators: a kernel
defined on degree-homogeneous arguments plus metadata (arity, total
degree); a generic wrapper extends every kernel multilinearly to arbitrary
inputs by splitting them into homogeneous components.

Sign conventions (fixed package-wide, see docs/sign-ledger.md):

* permuting arguments of degrees p, q past each other contributes
  (-1)^{pq} (unshifted degrees);
* the arity-2 structure cochain is m(a, b) = (-1)^{|a|-1} [a, b];
* the contraction cochain of a decomposable k-form a_1 ^ ... ^ a_k (with
  polynomial coefficient g) is

      phi(w)(p_1,...,p_k) = sum_sigma kappa(sigma)
          * (-1)^{sum_i (k-i) |p_sigma(i)|}
          * g * <a_1, p_sigma(1)> ^ ... ^ <a_k, p_sigma(k)>

  where kappa is the Koszul sign of sigma on the argument word. The
  sigma-dependent exponent makes the evaluator graded-symmetric, and the
  whole convention set is pinned by two identities the test suite checks
  exhaustively: d(phi(w)) = phi(dw) and [phi(a), phi(b)] = 0;
* composition inserts the right factor into the first slot, summed over
  unshuffles: (F.G)(args) = sum_I eps(I) F(G(args_I), args_rest), with
  eps the Koszul sign of pulling I to the front;
* [F, G] = F.G - (-1)^{deg F * deg G} G.F, and the differential is
  bracketing with m.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactcore import Poly, VarContext, koszul_sign, koszul_unshuffle_sign
from .polyvec import (
    DiffForm,
    PolyVector,
    basis_multivectors,
    form_degree,
    mv_add,
    mv_eq,
    mv_func,
    mv_is_zero,
    mv_make,
    mv_pmul,
    mv_scale,
    mv_sub,
    mv_zero,
    schouten,
    wedge_mv,
)

__all__ = [
    "Cochain",
    "EqReport",
    "cochain_bracket",
    "cochain_compose",
    "cochain_differential",
    "cochain_equal_on_basis",
    "cochain_zero",
    "evaluate",
    "phi",
    "structure_cochain",
]

Kernel = Callable[[Tuple[PolyVector, ...]], PolyVector]


@dataclass(frozen=True)
class Cochain:
    """A multilinear graded-symmetric operation carried as an evaluator.

    ``degree`` is the total cochain degree entering bracket signs: the
    output's shifted degree minus the sum of the inputs' shifted degrees,
    plus (arity - 1).
    """

    ctx: VarContext
    arity: int
    degree: int
    kernel: Kernel
    name: str = ""
    # for cochains contracted out of a form: the form itself, so callers can
    # prune evaluations that must vanish for frame-support reasons
    source_form: Optional["DiffForm"] = None


def _homogeneous_components(v: PolyVector) -> List[PolyVector]:
    by_deg: Dict[int, Dict] = {}
    for frame, poly in v.terms.items():
        by_deg.setdefault(len(frame), {})[frame] = poly
    return [PolyVector(v.ctx, terms) for _, terms in sorted(by_deg.items())]


def evaluate(c: Cochain, args: Sequence[PolyVector]) -> PolyVector:
    """Apply a cochain, extending its kernel multilinearly to mixed inputs."""
    args = tuple(args)
    if len(args) != c.arity:
        raise ValueError(f"cochain of arity {c.arity} applied to {len(args)} arguments")
    for a in args:
        if a.ctx != c.ctx:
            raise ValueError("context mismatch")
    split = [_homogeneous_components(a) for a in args]
    if any(not comps for comps in split):
        return mv_zero(c.ctx)
    total = mv_zero(c.ctx)
    for combo in itertools.product(*split):
        total = mv_add(total, c.kernel(combo))
    return total


def _degree_of(v: PolyVector) -> int:
    # kernels only ever see single-degree nonzero arguments
    return len(next(iter(v.terms)))


def cochain_zero(ctx: VarContext, arity: int, degree: int = 0) -> Cochain:
    return Cochain(ctx, arity, degree, lambda args: mv_zero(ctx), name="0")


# ---------------------------------------------------------------------------
# the structure cochain and the contraction cochain


def structure_cochain(ctx: VarContext) -> Cochain:
    """The arity-2 cochain m(a,b) = (-1)^{|a|-1}[a,b] packaging the bracket."""

    def kernel(args: Tuple[PolyVector, ...]) -> PolyVector:
        a, b = args
        sign = -1 if (_degree_of(a) - 1) % 2 else 1
        return mv_scale(schouten(a, b), sign)

    return Cochain(ctx, 2, 1, kernel, name="m")


def _contract_coord(j: int, v: PolyVector) -> PolyVector:
    """<dx_j, v> without building the one-form."""
    terms = []
    for frame, poly in v.terms.items():
        try:
            pos = frame.index(j)
        except ValueError:
            continue
        reduced = frame[:pos] + frame[pos + 1 :]
        terms.append((reduced, {e: -c for e, c in poly.items()} if pos % 2 else poly))
    return mv_make(v.ctx, terms)


def phi(omega: DiffForm, arity: Optional[int] = None) -> Cochain:
    """The contraction cochain of a homogeneous k-form.

    Arity k, degree k-2; a 0-form acts as the constant function cochain.
    For the zero form the arity cannot be inferred and must be supplied.
    """
    k = form_degree(omega)
    if k is None:
        if not omega.terms:
            if arity is None:
                raise ValueError("zero form: arity must be supplied explicitly")
            return cochain_zero(omega.ctx, arity, arity - 2)
        raise ValueError("phi expects a homogeneous form")
    if arity is not None and arity != k:
        raise ValueError(f"arity {arity} contradicts form degree {k}")
    ctx = omega.ctx
    coframes = list(omega.terms.items())

    if k == 0:
        ((_, g0),) = coframes

        def kernel0(args: Tuple[PolyVector, ...]) -> PolyVector:
            return mv_func(ctx, g0)

        return Cochain(ctx, 0, -2, kernel0, name="phi", source_form=omega)

    def kernel(args: Tuple[PolyVector, ...]) -> PolyVector:
        degs = [_degree_of(a) for a in args]
        total = mv_zero(ctx)
        for coframe, g in coframes:
            # contractions of each coordinate differential against each slot
            table = [[_contract_coord(j, a) for a in args] for j in coframe]
            for sigma in itertools.permutations(range(k)):
                wedge: Optional[PolyVector] = None
                for pos in range(k):
                    piece = table[pos][sigma[pos]]
                    if mv_is_zero(piece):
                        wedge = None
                        break
                    wedge = piece if wedge is None else wedge_mv(wedge, piece)
                    if mv_is_zero(wedge):
                        wedge = None
                        break
                if wedge is None:
                    continue
                exponent = sum((k - 1 - pos) * degs[sigma[pos]] for pos in range(k))
                sign = koszul_sign(degs, sigma) * (-1 if exponent % 2 else 1)
                total = mv_add(total, mv_scale(mv_pmul(wedge, g), sign))
        return total

    return Cochain(ctx, k, k - 2, kernel, name="phi", source_form=omega)


# ---------------------------------------------------------------------------
# composition, bracket, differential


def cochain_compose(f: Cochain, g: Cochain) -> Cochain:
    """Insertion of g into the first slot of f, summed over unshuffles."""
    if f.ctx != g.ctx:
        raise ValueError("context mismatch")
    ctx = f.ctx
    if f.arity == 0:
        return cochain_zero(ctx, max(g.arity - 1, 0), f.degree + g.degree)
    r = f.arity + g.arity - 1

    def kernel(args: Tuple[PolyVector, ...]) -> PolyVector:
        degs = [_degree_of(a) for a in args]
        total = mv_zero(ctx)
        for subset in itertools.combinations(range(r), g.arity):
            eps = koszul_unshuffle_sign(degs, subset)
            inner = evaluate(g, tuple(args[i] for i in subset))
            if mv_is_zero(inner):
                continue
            chosen = set(subset)
            rest = tuple(args[i] for i in range(r) if i not in chosen)
            val = evaluate(f, (inner,) + rest)
            total = mv_add(total, mv_scale(val, eps))
        return total

    return Cochain(ctx, r, f.degree + g.degree, kernel, name=f"({f.name}.{g.name})")


def cochain_bracket(f: Cochain, g: Cochain) -> Cochain:
    """[f,g] = f.g - (-1)^{deg f deg g} g.f."""
    fg = cochain_compose(f, g)
    gf = cochain_compose(g, f)
    if fg.arity != gf.arity:
        raise ValueError("bracket of these arities is not defined")
    sign = -1 if (f.degree * g.degree) % 2 else 1

    def kernel(args: Tuple[PolyVector, ...]) -> PolyVector:
        return mv_sub(evaluate(fg, args), mv_scale(evaluate(gf, args), sign))

    return Cochain(
        fg.ctx, fg.arity, f.degree + g.degree, kernel, name=f"[{f.name},{g.name}]"
    )


def cochain_differential(f: Cochain) -> Cochain:
    """Bracketing with the structure cochain; raises arity by one."""
    d = cochain_bracket(structure_cochain(f.ctx), f)
    return Cochain(d.ctx, d.arity, f.degree + 1, d.kernel, name=f"d({f.name})")


# ---------------------------------------------------------------------------
# pointwise equality over the canonical basis


@dataclass(frozen=True)
class EqReport:
    equal: bool
    witness: Optional[Tuple[Tuple[PolyVector, ...], PolyVector, PolyVector]]
    cases: int


def cochain_equal_on_basis(
    a: Cochain, b: Cochain, *, poly_degree: int = 2, mv_degree: int = 3
) -> EqReport:
    """Compare two cochains on every tuple of canonical basis multivectors.

    On disagreement returns the first witness tuple together with both
    values (deterministic enumeration order).
    """
    if a.arity != b.arity:
        raise ValueError("cochains of different arity are never compared")
    if a.ctx != b.ctx:
        raise ValueError("context mismatch")
    basis = basis_multivectors(a.ctx, poly_degree, range(mv_degree + 1))
    cases = 0
    for args in itertools.product(basis, repeat=a.arity):
        cases += 1
        va = evaluate(a, args)
        vb = evaluate(b, args)
        if not mv_eq(va, vb):
            return EqReport(False, (args, va, vb), cases)
    return EqReport(True, None, cases)
