"""Edge-labeled directed graphs and their text formats."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

INVERSE_SUFFIX = "_r"


class GraphFormatError(ValueError):
    pass


Edge = tuple[int, str, int]


@dataclass(frozen=True)
class Graph:
    """Immutable graph over dense node indices ``0..node_count-1``."""

    node_names: tuple[str, ...]
    edges: frozenset[Edge]
    # parsed input lines that collapsed into an existing edge or triple
    duplicates: int = field(default=0, compare=False)

    def __post_init__(self):
        n = len(self.node_names)
        for src, _, dst in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"edge endpoint out of range: {(src, dst)}")

    @property
    def node_count(self) -> int:
        return len(self.node_names)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str, str]]) -> "Graph":
        """Intern node identifiers in first-appearance order (src before dst)."""
        index: dict[str, int] = {}
        out = set()
        total = 0
        for src, label, dst in edges:
            i = index.setdefault(src, len(index))
            j = index.setdefault(dst, len(index))
            out.add((i, label, j))
            total += 1
        return cls(tuple(index), frozenset(out), total - len(out))

    @cached_property
    def _by_pair(self) -> dict[tuple[int, int], tuple[str, ...]]:
        pairs = defaultdict(list)
        for src, label, dst in self.edges:
            pairs[src, dst].append(label)
        return {k: tuple(sorted(v)) for k, v in pairs.items()}

    def labels_between(self, src: int, dst: int) -> tuple[str, ...]:
        """Sorted labels of the edges ``src -> dst``."""
        return self._by_pair.get((src, dst), ())

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Path:
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not self.edges:
            raise ValueError("a path has at least one edge")
        for (_, _, a), (b, _, _) in zip(self.edges, self.edges[1:]):
            if a != b:
                raise ValueError(f"path edges do not chain at {a} -> {b}")

    @property
    def src(self) -> int:
        return self.edges[0][0]

    @property
    def dst(self) -> int:
        return self.edges[-1][2]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e[1] for e in self.edges)

    @property
    def nodes(self) -> tuple[int, ...]:
        return (self.src,) + tuple(e[2] for e in self.edges)

    def __len__(self):
        return len(self.edges)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def load_edge_list(text: str) -> Graph:
    """Parse ``src label dst`` lines."""
    edges = []
    for lineno, line in _content_lines(text):
        fields = line.split()
        if len(fields) != 3:
            raise GraphFormatError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        edges.append(tuple(fields))
    return Graph.from_edges(edges)


def _strip_term(tok: str) -> str:
    if tok.startswith("<") and tok.endswith(">"):
        tok = tok[1:-1]
    return tok


def load_triples(text: str, add_inverses: bool = True) -> Graph:
    """Parse ``o p s`` triples into edges ``(o, p, s)``.

    With ``add_inverses`` each triple also yields ``(s, p_r, o)``.  Angle
    brackets and a trailing ``.`` are stripped, so plain N-Triples lines
    without literals are accepted.  ``Graph.duplicates`` counts repeated
    triples, not repeated edges.
    """
    triples = []
    for lineno, line in _content_lines(text):
        fields = line.split()
        if fields and fields[-1] == ".":
            fields.pop()
        elif fields and fields[-1].endswith("."):
            fields[-1] = fields[-1][:-1]
        if len(fields) != 3 or not all(fields):
            raise GraphFormatError(f"line {lineno}: expected a triple 'o p s', got {line!r}")
        triples.append(tuple(_strip_term(f) for f in fields))
    edges = []
    for o, p, s in triples:
        edges.append((o, p, s))
        if add_inverses:
            edges.append((s, p + INVERSE_SUFFIX, o))
    g = Graph.from_edges(edges)
    return Graph(g.node_names, g.edges, len(triples) - len(set(triples)))


def label_alphabet(g: Graph) -> set[str]:
    return {label for _, label, _ in g.edges}


def to_edge_list(g: Graph) -> str:
    """Serialize so that ``load_edge_list`` restores node order and edges.

    Edges are grouped by their larger endpoint so each node first appears in
    index order.  Raises ``ValueError`` for graphs that no edge list can
    reproduce (isolated nodes, or an order interning could not produce).
    """
    groups: dict[int, list[Edge]] = defaultdict(list)
    for e in g.edges:
        groups[max(e[0], e[2])].append(e)
    names = g.node_names
    out: list[Edge] = []
    introduced = 0
    for m in range(g.node_count):
        grp = sorted(groups[m])
        if not grp:
            continue
        if introduced == m - 1:
            # node m-1 only ever appears next to m; it must lead as a source
            pair = [e for e in grp if e[0] == m - 1 and e[2] == m]
            if not pair:
                raise ValueError(f"node {names[m - 1]!r} cannot be placed in edge-list order")
            grp.remove(pair[0])
            out.append(pair[0])
        elif introduced < m - 1:
            raise ValueError(f"node {names[introduced]!r} has no edges")
        out.extend(grp)
        introduced = m + 1
    if introduced != g.node_count:
        raise ValueError(f"node {names[introduced]!r} has no edges")
    return "".join(f"{names[s]} {label} {names[d]}\n" for s, label, d in out)
