#!/usr/bin/env python3
"""Run the built-in example graph through both query semantics and print each step."""
from cfpq import example
from cfpq.cli import selftest
from cfpq.engine import query_relational
from cfpq.singlepath import query_single_path


def main():
    g, raw = example.graph(), example.grammar()
    print("grammar:")
    print(raw.to_text())
    selftest(verbose=True)

    names = g.node_names
    print("\nrelational answer for S:")
    for i, j in sorted(query_relational(g, raw, "S")):
        print(f"  ({names[i]}, {names[j]})")

    print("\none witness path per pair:")
    for (i, j), p in sorted(query_single_path(g, raw, "S").items()):
        hops = " ".join(f"-{label}->{names[v]}" for (_, label, _), v in zip(p.edges, p.nodes[1:]))
        print(f"  ({names[i]}, {names[j]}) length {len(p)}: {names[p.src]} {hops}")


if __name__ == "__main__":
    main()
