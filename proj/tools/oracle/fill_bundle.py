#!/usr/bin/env python3
"""Fill a field invariant bundle (m = 1) for a dihedral quintet with PARI.

Given an irreducible polynomial of odd prime degree p whose Galois group is
dihedral of order 2p, this computes class numbers, class group invariant
factors, roots of unity, regulators and signatures of

    k = Q,  F = the quadratic resolvent,  K = K' = the root field,  L = the splitting field

and writes the bundle JSON read by `bkd bk-check`. Class groups are certified
with bnfcertify, so the output does not rest on GRH.

    pip install cypari2
    python3 fill_bundle.py "x^3 - x - 1" > s3_bundle.json
"""

import argparse
import json
import sys

import cypari2

pari = cypari2.Pari()


def field_record(pol, digits):
    bnf = pari.bnfinit(pol, 1)
    if pari.bnfcertify(bnf) != 1:
        raise SystemExit(f"bnfcertify failed for {pol}")
    r1, r2 = (int(x) for x in bnf.nf_get_sign())
    cyc = [int(c) for c in bnf.bnf_get_cyc()]
    h = 1
    for c in cyc:
        h *= c
    rec = {"h": h}
    if cyc:
        rec["h_factors"] = cyc
    rec["w"] = int(bnf.bnf_get_tu()[0])
    # the working precision carries 20 guard digits, so 5 spare digits is safe
    rec["R"] = {"value": decimal(bnf.bnf_get_reg(), digits), "error": f"1e-{digits - 5}"}
    rec["r1"] = r1
    rec["r2"] = r2
    rec["rank"] = r1 + r2 - 1
    return rec


def decimal(x, digits):
    """x rounded to `digits` significant figures."""
    return str(pari(f'strprintf("%.{digits}g", {x})'))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("polynomial", help="defining polynomial of K in x, e.g. 'x^3 - x - 1'")
    ap.add_argument("--digits", type=int, default=30, help="significant digits of the regulators")
    args = ap.parse_args()

    pari.set_real_precision(args.digits + 20)
    f = pari(args.polynomial)
    p = int(pari.poldegree(f))
    if not pari.isprime(p) or p == 2:
        raise SystemExit("K must have odd prime degree")
    if pari.polgalois(f)[0] != 2 * p:
        raise SystemExit("the Galois group is not dihedral of order 2p")

    L = pari.polredabs(pari.nfsplitting(f))
    quadratic = pari.nfsubfields(L, 2)
    if len(quadratic) != 1:
        raise SystemExit("the splitting field should have one quadratic subfield")
    F = pari.polredabs(quadratic[0][0])
    K = pari.polredabs(f)

    rK = field_record(K, args.digits)
    fields = {
        "k": field_record(pari("x"), args.digits),
        "F": field_record(F, args.digits),
        "K": rK,
        "K'": dict(rK),
        "L": field_record(L, args.digits),
    }
    # complex conjugation fixes a root of f exactly when K has a real place
    if rK["r1"] >= 1 and rK["r2"] >= 1:
        dec = {"type": "REFLECTION", "j": 0}
    elif rK["r2"] == 0:
        dec = {"type": "TRIVIAL"}
    else:
        raise SystemExit("unexpected signature of K")
    bundle = {
        "p": p,
        "m": 1,
        "fields": fields,
        "places": [{"kind": "real", "decomposition": dec}],
        "provenance": (
            f"tools/oracle/fill_bundle.py '{args.polynomial}'; PARI/GP {'.'.join(map(str, pari.version()))} via cypari2; "
            f"K = {K}, F = {F}, L = {L}; class groups certified with bnfcertify; "
            f"regulators to {args.digits} significant digits"
        ),
    }
    json.dump(bundle, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
