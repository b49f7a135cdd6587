#!/usr/bin/env python3
"""Writes the graph documents of the corpus.

Squares are generated by pairing, for each (range, source) pair, the
blue-then-red paths with the red-then-blue paths in sorted order. For
2-graphs any such bijection yields a valid factorization.

Usage: make_corpus.py [outdir]
"""
import json
import sys
from collections import defaultdict
from pathlib import Path


def graph(vertices, blue, red, squares=None):
    """blue/red: lists of (id, range, source)."""
    if squares is None:
        squares = auto_squares(blue, red)
    return {
        "vertices": vertices,
        "blue_edges": [{"id": i, "range": r, "source": s} for i, r, s in blue],
        "red_edges": [{"id": i, "range": r, "source": s} for i, r, s in red],
        "squares": [
            {"blue_in": a, "red_in": b, "red_out": c, "blue_out": d} for a, b, c, d in squares
        ],
    }


def auto_squares(blue, red):
    br = defaultdict(list)  # blue_in after red_in
    rb = defaultdict(list)  # red_out after blue_out
    for bi, br_r, br_s in blue:
        for ri, rr, rs in red:
            if br_s == rr:
                br[(br_r, rs)].append((bi, ri))
    for ri, rr, rs in red:
        for bi, b_r, b_s in blue:
            if rs == b_r:
                rb[(rr, b_s)].append((ri, bi))
    out = []
    for key in sorted(set(br) | set(rb)):
        left, right = sorted(br[key]), sorted(rb[key])
        if len(left) != len(right):
            raise SystemExit(f"path counts differ at {key}: {len(left)} vs {len(right)}")
        out.extend((a, b, c, d) for (a, b), (c, d) in zip(left, right))
    return out


def torus(v, suffix=""):
    return [(f"a{suffix}", v, v)], [(f"b{suffix}", v, v)]


def union(*parts):
    vs, bl, rd = [], [], []
    for v, b, r in parts:
        vs += v
        bl += b
        rd += r
    return vs, bl, rd


def spine(n):
    """Finite analogue of the v/w/x/y skeleton, truncated at depth n.

    v_k <- v_{k+1} and v_k <- w_k in both colors, w_k carries one loop of each
    color, x_1 emits blue edges to every v_k and x_{k+1} -> x_k in blue, y
    likewise in red. x_k and y_k carry a loop of the other color. The cut
    ends are closed with loops: v_n gets a loop of each color, x_n a blue
    loop and y_n a red loop. The loops at v_n are entrances that the infinite
    chain does not have, so this truncation fails (M).
    """
    V = [f"v{k}" for k in range(1, n + 1)]
    W = [f"w{k}" for k in range(1, n + 1)]
    X = [f"x{k}" for k in range(1, n + 1)]
    Y = [f"y{k}" for k in range(1, n + 1)]
    blue, red = [], []
    for k in range(1, n + 1):
        if k < n:
            blue.append((f"bv{k}", f"v{k}", f"v{k+1}"))
            red.append((f"rv{k}", f"v{k}", f"v{k+1}"))
            blue.append((f"bx{k}", f"x{k}", f"x{k+1}"))
            red.append((f"ry{k}", f"y{k}", f"y{k+1}"))
        blue.append((f"bw{k}", f"v{k}", f"w{k}"))
        red.append((f"rw{k}", f"v{k}", f"w{k}"))
        blue.append((f"lbw{k}", f"w{k}", f"w{k}"))
        red.append((f"lrw{k}", f"w{k}", f"w{k}"))
        blue.append((f"bxv{k}", f"v{k}", "x1"))
        red.append((f"ryv{k}", f"v{k}", "y1"))
        red.append((f"lrx{k}", f"x{k}", f"x{k}"))
        blue.append((f"lby{k}", f"y{k}", f"y{k}"))
    blue.append((f"lbv{n}", f"v{n}", f"v{n}"))
    red.append((f"lrv{n}", f"v{n}", f"v{n}"))
    blue.append((f"lbx{n}", f"x{n}", f"x{n}"))
    red.append((f"lry{n}", f"y{n}", f"y{n}"))
    return V + W + X + Y, blue, red


def x_chain(n, name="x", chain_color="blue"):
    """x_{k+1} -> x_k in chain_color, a loop of the other color at every x_k,
    and a chain_color loop closing the cut end at x_n."""
    xs = [f"{name}{k}" for k in range(1, n + 1)]
    chain, loops = [], []
    c, o = ("b", "r") if chain_color == "blue" else ("r", "b")
    for k in range(1, n):
        chain.append((f"{c}{name}{k}", f"{name}{k}", f"{name}{k+1}"))
    chain.append((f"l{c}{name}{n}", f"{name}{n}", f"{name}{n}"))
    for k in range(1, n + 1):
        loops.append((f"l{o}{name}{k}", f"{name}{k}", f"{name}{k}"))
    return (xs, chain, loops) if chain_color == "blue" else (xs, loops, chain)


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    docs = {}
    docs["g_t"] = graph(["v"], [("a", "v", "v")], [("b", "v", "v")])
    docs["g_2"] = graph(
        ["v"],
        [("a1", "v", "v"), ("a2", "v", "v")],
        [("b1", "v", "v"), ("b2", "v", "v")],
        [(f"a{i}", f"b{j}", f"b{j}", f"a{i}") for i in (1, 2) for j in (1, 2)],
    )
    docs["g_vh"] = graph(
        ["v", "h"],
        [("a", "h", "h"), ("e", "v", "h")],
        [("b", "h", "h"), ("f", "v", "h")],
        [("a", "b", "b", "a"), ("e", "b", "f", "a")],
    )
    docs["g_c3"] = graph(
        ["u0", "u1", "u2"],
        [(f"x{i}", f"u{(i + 1) % 3}", f"u{i}") for i in range(3)],
        [(f"y{i}", f"u{(i + 1) % 3}", f"u{i}") for i in range(3)],
        [(f"x{(i + 1) % 3}", f"y{i}", f"y{(i + 1) % 3}", f"x{i}") for i in range(3)],
    )
    vs, b, r = union((["v"], *torus("v", "v")), (["w"], *torus("w", "w")))
    docs["g_d"] = graph(vs, b, r)
    vs, b, r = union((["v"], *torus("v", "v")), (["w"], *torus("w", "w")), (["u"], *torus("u", "u")))
    docs["g_d_plus_u"] = graph(vs, b, r)
    g2 = docs["g_2"]
    docs["g_2_plus_t"] = graph(
        ["p", "t"],
        [("a1", "p", "p"), ("a2", "p", "p"), ("at", "t", "t")],
        [("b1", "p", "p"), ("b2", "p", "p"), ("bt", "t", "t")],
        [(s["blue_in"], s["red_in"], s["red_out"], s["blue_out"]) for s in g2["squares"]]
        + [("at", "bt", "bt", "at")],
    )
    docs["spine2"] = graph(*spine(2))
    docs["spine_x3"] = graph(*x_chain(3))
    docs["spine_xy3"] = graph(*union(x_chain(3), x_chain(3, "y", "red")))

    for name, doc in docs.items():
        (out / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
