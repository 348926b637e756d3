#!/usr/bin/env python3
"""Profile the four-variable twisted instance across solver bounds.

For H = dx1^dx2^dx3 and leading term d/dx1^d/dx2 + d/dx3^d/dx4, sweep the
truncation order and coefficient-degree bound and report where the
order-by-order solver succeeds, what correction it picks, and where it
reports an obstruction with what residual. Exact arithmetic throughout;
output is deterministic.
"""
import argparse

from gdcalc.deform import defect_series, mc_solve
from gdcalc.exactcore import VarContext, poly_from_terms
from gdcalc.polyvec import form_make, mv_is_zero, mv_make
from gdcalc.twistcheck import make_twisted

CTX4 = VarContext(("x1", "x2", "x3", "x4"))


def fmt_mv(v):
    if mv_is_zero(v):
        return "0"
    parts = []
    for frame, poly in sorted(v.terms.items()):
        for exps, c in sorted(poly.items()):
            mono = "".join(
                f"*{CTX4.names[i]}^{e}" if e > 1 else f"*{CTX4.names[i]}" if e else ""
                for i, e in enumerate(exps)
            )
            wedge = "^".join(f"d/d{CTX4.names[i]}" for i in frame)
            parts.append(f"{c}{mono} {wedge}")
    return " + ".join(parts)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=4)
    ap.add_argument("--max-degree", type=int, default=2)
    args = ap.parse_args()

    one = poly_from_terms(4, [(1, (0, 0, 0, 0))])
    s = make_twisted(form_make(CTX4, [((0, 1, 2), one)]))
    pi1 = mv_make(CTX4, [((0, 1), one), ((2, 3), one)])

    for deg in range(args.max_degree + 1):
        for trunc in range(2, args.max_order + 1):
            rep = mc_solve(s, pi1, trunc, poly_degree=deg)
            if rep.status == "solved":
                extras = {
                    k: fmt_mv(v) for k, v in sorted(rep.solution.coeffs.items()) if k > 1
                }
                tail = "; ".join(f"t^{k}: {txt}" for k, txt in extras.items()) or "no corrections"
                residual_zero = all(
                    mv_is_zero(v) for v in defect_series(s, rep.solution).values()
                )
                print(f"deg<={deg} N={trunc}: solved ({tail}); defect zero: {residual_zero}")
            else:
                print(
                    f"deg<={deg} N={trunc}: obstructed at order {rep.order}, "
                    f"residual {fmt_mv(rep.residual)}"
                )


if __name__ == "__main__":
    main()
