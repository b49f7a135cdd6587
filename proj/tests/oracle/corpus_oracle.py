#!/usr/bin/env python3
"""Independent expectations for the corpus, computed with sympy.

Nothing here shares code with the C++ library. Methods:
  * adjacency matrices read straight off the edge lists;
  * K-groups from sympy's Smith normal form: coker of the row block gives
    the free rank and torsion, the stacked block's rank gives the kernel
    summand, and K1 = ker(row) / im(koszul) has free rank
    (2d - rank row) - rank koszul and the torsion of Z^2d / im(koszul)
    (ker(row) is a saturated sublattice, so the quotient by it is free);
  * (M) by enumerating x in N^d, 0 < |x|_inf <= 6, and testing x against
    the rational column space through its left nullspace (a rational
    preimage scales to an integer one), so Fails is exact and Holds is
    confirmed on the box;
  * trace existence by searching integer combinations (|c| <= 3) of a
    rational nullspace basis for a strictly positive vector;
  * the saturated hereditary lattice by scanning all subsets;
  * verdicts from the rule order with those ingredients.

Usage: corpus_oracle.py CORPUS_DIR   (writes NAME.expect.json next to NAME.json)
"""
import itertools
import json
import sys
from pathlib import Path

from sympy import ZZ, eye, ilcm, zeros
from sympy.matrices.normalforms import invariant_factors

RADIUS = 6

# Extra certify runs: graph name -> list of runs, each a list of assumed vertex sets.
ASSUMPTION_RUNS = {
    "g_d": [[["v"]]],
    "g_d_plus_u": [[["v"], ["v", "w"]]],
    "spine_xy3": [[["x1", "x2", "x3"]]],
}


def load(path):
    doc = json.loads(Path(path).read_text())
    vs = doc["vertices"]
    idx = {v: i for i, v in enumerate(vs)}
    d = len(vs)
    mats = []
    edges = {}
    for key in ("blue_edges", "red_edges"):
        a = zeros(d, d)
        for e in doc[key]:
            a[idx[e["range"]], idx[e["source"]]] += 1
        mats.append(a)
        edges[key] = [(idx[e["range"]], idx[e["source"]]) for e in doc[key]]
    return vs, mats[0], mats[1], edges


def torsion_and_rank(m):
    if m.rows == 0 or m.cols == 0:
        return [], 0
    inv = [abs(int(f)) for f in invariant_factors(m, domain=ZZ)]
    nonzero = [f for f in inv if f != 0]
    return [f for f in nonzero if f != 1], len(nonzero)


def blocks(a1, a2):
    d = a1.rows
    b1 = eye(d) - a1.T
    b2 = eye(d) - a2.T
    return b1, b2, b1.row_join(b2), b1.col_join(b2), b2.col_join(-b1)


def k_theory(a1, a2):
    d = a1.rows
    _, _, row, stacked, koszul = blocks(a1, a2)
    row_torsion, row_rank = torsion_and_rank(row)
    stacked_rank = stacked.rank()
    kos_torsion, kos_rank = torsion_and_rank(koszul)
    return {
        "coker_free_rank": d - row_rank,
        "coker_torsion": row_torsion,
        "ker_rank": d - stacked_rank,
        "k1_free_rank": (2 * d - row_rank) - kos_rank,
        "k1_torsion": kos_torsion,
    }


def matrix_condition_holds(b):
    d = b.rows
    # x lies in the rational column space iff every left-null vector kills it
    left = [[int(c) for c in v * ilcm(1, *[c.q for c in v])] for v in b.T.nullspace()]
    for x in itertools.product(range(RADIUS + 1), repeat=d):
        if any(x) and all(sum(n[i] * x[i] for i in range(d)) == 0 for n in left):
            return False
    return True


def has_trace(a1, a2):
    d = a1.rows
    basis = (eye(d) - a1).col_join(eye(d) - a2).nullspace()
    if not basis:
        return False
    for coeffs in itertools.product(range(-3, 4), repeat=len(basis)):
        v = zeros(d, 1)
        for c, b in zip(coeffs, basis):
            v += c * b
        if all(x > 0 for x in v):
            return True
    return False


def hereditary(s, edges):
    return all(src in s for key in edges for (rng, src) in edges[key] if rng in s)


def saturated(s, edges, d):
    for v in range(d):
        if v in s:
            continue
        for key in edges:
            if all(src in s for (rng, src) in edges[key] if rng == v):
                return False
    return True


def lattice(edges, d):
    out = []
    for mask in range(1 << d):
        s = {i for i in range(d) if mask >> i & 1}
        if hereditary(s, edges) and saturated(s, edges, d):
            out.append(frozenset(s))
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def maximal_chains(sets, d):
    full = frozenset(range(d))
    covers = {
        s: [t for t in sets if s < t and not any(s < u < t for u in sets)] for s in sets
    }
    chains = []

    def extend(chain):
        if chain[-1] == full:
            chains.append(list(chain))
            return
        for t in covers[chain[-1]]:
            extend(chain + [t])

    extend([frozenset()])
    return chains


def sub(a, members):
    return a.extract(members, members)


def verdict(vs, a1, a2, edges, assumed):
    d = len(vs)
    b1, b2, row, _, _ = blocks(a1, a2)
    if not matrix_condition_holds(row):
        return 1, []
    sets = lattice(edges, d)
    if len(sets) == 2:
        return 0, []
    best = None
    for chain in maximal_chains(sets, d):
        ok = True
        for h in chain[:-1]:
            rest = sorted(set(range(d)) - h)
            q1, q2 = sub(a1, rest), sub(a2, rest)
            if not matrix_condition_holds(blocks(q1, q2)[2]):
                ok = False
        interior = chain[1:-1]
        names = [sorted((vs[i] for i in h), key=vs.index) for h in interior]
        if not all(sorted(n) in [sorted(a) for a in assumed] for n in names):
            ok = False
        if ok and (best is None or len(names) < len(best)):
            best = names
    if best is None:
        return 3, []
    return 2, best


def main():
    corpus = Path(sys.argv[1])
    for path in sorted(corpus.glob("*.json")):
        if path.name.endswith(".expect.json"):
            continue
        name = path.stem
        vs, a1, a2, edges = load(path)
        d = len(vs)
        sets = lattice(edges, d)
        runs = [{"assume_n": [], "exit": verdict(vs, a1, a2, edges, [])[0], "pending": []}]
        for assumed in ASSUMPTION_RUNS.get(name, []):
            code, pending = verdict(vs, a1, a2, edges, assumed)
            runs.append({"assume_n": [",".join(a) for a in assumed], "exit": code, "pending": pending})
        expect = {
            "graph": path.name,
            "vertices": vs,
            "A1": [[int(x) for x in a1.row(i)] for i in range(d)],
            "A2": [[int(x) for x in a2.row(i)] for i in range(d)],
            "ktheory": k_theory(a1, a2),
            "M": "Holds" if matrix_condition_holds(blocks(a1, a2)[2]) else "Fails",
            "trace": has_trace(a1, a2),
            "lattice": [sorted((vs[i] for i in s), key=vs.index) for s in sets],
            "cofinal": len(sets) == 2,
            "certify": runs,
        }
        out = corpus / f"{name}.expect.json"
        out.write_text(json.dumps(expect, indent=2) + "\n")


if __name__ == "__main__":
    main()
