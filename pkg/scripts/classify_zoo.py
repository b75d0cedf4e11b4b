#!/usr/bin/env python3
"""Classify the whole fixture zoo and print a verdict table.

Usage:
    python scripts/classify_zoo.py [--dot OUTDIR]

With --dot, also writes one GraphViz file per fixture.
"""

import argparse
import os

from leavitt_lab.graph import Path, classify_graph, graph_to_dot
from leavitt_lab.zoo import spi4, standard_graphs


def describe_witness(witness) -> str:
    if isinstance(witness, Path):
        return "cycle " + "·".join(witness.edges)
    if isinstance(witness, frozenset):
        return "hereditary saturated {" + ", ".join(sorted(witness)) + "}"
    return str(witness)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--dot", metavar="OUTDIR", help="write DOT files here")
    args = parser.parse_args()

    graphs = dict(standard_graphs())
    graphs["spi4"] = spi4()
    width = max(len(name) for name in graphs)
    for name, g in graphs.items():
        c = classify_graph(g)
        print(f"{name:<{width}}  {c.verdict.value:<22}  {describe_witness(c.witness)}")
        if args.dot:
            os.makedirs(args.dot, exist_ok=True)
            with open(os.path.join(args.dot, f"{name}.dot"), "w") as fh:
                fh.write(graph_to_dot(g))


if __name__ == "__main__":
    main()
