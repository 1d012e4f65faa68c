#!/usr/bin/env python3
"""Regenerate the example chain specs under specs/."""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "specs"


def explicit(start, end, matrix_at):
    mats = []
    for n in range(start, end):
        m = matrix_at(n)
        mats.append({"time": n, "rows": len(m), "cols": len(m[0]), "entries": m})
    return mats


def write(name, doc):
    (OUT / name).write_text(json.dumps(doc, indent=1) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    write("permutation2.json", {
        "window": {"start": -200, "end": 0},
        "matrices": {"family": "permutation2", "params": {}},
    })
    write("alt_dim.json", {
        "window": {"start": -60, "end": 0},
        "matrices": {"family": "alt_dim", "params": {}},
    })
    absorbing = [[1, 0, 0], [0.25, 0.5, 0.25], [0, 0, 1]]
    write("absorbing3.json", {
        "window": {"start": 0, "end": 100},
        "matrices": explicit(0, 100, lambda n: absorbing),
        "initial": {"time": 0, "probs": [0, 1, 0]},
        "tail_event": {"type": "absorption", "targets": [3]},
        "bands": {"p": 0.1, "q": 0.9},
    })
    write("terminal_ones.json", {
        "window": {"start": 0, "end": 30},
        "matrices": explicit(0, 30, lambda n: absorbing),
        "initial": {"time": 0, "probs": [0, 1, 0]},
        "tail_event": {"type": "terminal_seed", "horizon": 30, "values": [1, 1, 1]},
        "bands": {"p": 0.1, "q": 0.9},
    })
    positive = [[0.9, 0.1], [0.2, 0.8]]
    write("positive_homogeneous.json", {
        "window": {"start": -60, "end": 0},
        "matrices": explicit(-60, 0, lambda n: positive),
    })
    write("row_sum_defect.json", {
        "window": {"start": 0, "end": 2},
        "matrices": explicit(0, 2, lambda n: [[0.5, 0.4], [0.3, 0.7]] if n == 1 else positive),
    })
    write("reset.json", {
        "window": {"start": -40, "end": 0},
        "matrices": {"family": "reset", "params": {"alpha": 0.5, "beta": 0.5, "band": 3}},
        "truncation": {"M": 80},
    })
    write("random_walk.json", {
        "window": {"start": -20, "end": 0},
        "matrices": {"family": "random_walk", "params": {}},
        "truncation": {"M": 200},
    })
    write("shift0.json", {
        "window": {"start": -20, "end": 0},
        "matrices": {"family": "shift", "params": {"ell": 0, "base": 5}},
        "truncation": {"M": 50},
    })
    write("shift1.json", {
        "window": {"start": -20, "end": 0},
        "matrices": {"family": "shift", "params": {"ell": 1}},
        "truncation": {"M": 50},
    })


if __name__ == "__main__":
    main()
