"""Grammar text parsing, Chomsky Normal Form conversion and string-level checks.

Grammars here have no designated start symbol: the start nonterminal is chosen
at query time.  Empty right-hand sides are rejected at parse time, so the CNF
pipeline never has to deal with nullable symbols.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

NONTERMINAL = "nonterminal"
TERMINAL = "terminal"

_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<bar>\|)|'(?P<term>[^'\s]+)'|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<bad>\S))")


class GrammarError(ValueError):
    """Raised for malformed grammar text or inconsistent symbol usage."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Symbol:
    kind: str
    name: str

    def __post_init__(self):
        if self.kind not in (NONTERMINAL, TERMINAL):
            raise ValueError(f"bad symbol kind {self.kind!r}")
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"bad symbol name {self.name!r}")

    @property
    def is_terminal(self) -> bool:
        return self.kind == TERMINAL

    def __str__(self):
        return f"'{self.name}'" if self.is_terminal else self.name


def N(name: str) -> Symbol:
    return Symbol(NONTERMINAL, name)


def T(name: str) -> Symbol:
    return Symbol(TERMINAL, name)


@dataclass(frozen=True)
class Grammar:
    """A context-free grammar without epsilon rules.

    ``nonterminals`` keeps first-appearance order so that dense indices
    assigned later are reproducible.
    """

    nonterminals: tuple[str, ...]
    terminals: frozenset[str]
    productions: tuple[tuple[str, tuple[Symbol, ...]], ...]

    def __post_init__(self):
        nts = set(self.nonterminals)
        clash = nts & self.terminals
        if clash:
            raise GrammarError(f"symbols used as both terminal and nonterminal: {sorted(clash)}")
        for lhs, rhs in self.productions:
            if lhs not in nts:
                raise GrammarError(f"undeclared nonterminal {lhs!r}")
            if not rhs:
                raise GrammarError(f"empty right-hand side for {lhs!r}")
            for sym in rhs:
                pool = self.terminals if sym.is_terminal else nts
                if sym.name not in pool:
                    raise GrammarError(f"undeclared {sym.kind} {sym.name!r}")

    @classmethod
    def from_rules(cls, rules: Iterable[tuple[str, Sequence[Symbol]]]) -> "Grammar":
        order: dict[str, None] = {}
        terminals = set()
        prods = []
        for lhs, rhs in rules:
            order.setdefault(lhs)
            for sym in rhs:
                if sym.is_terminal:
                    terminals.add(sym.name)
                else:
                    order.setdefault(sym.name)
            prods.append((lhs, tuple(rhs)))
        return cls(tuple(order), frozenset(terminals), tuple(prods))

    def to_text(self) -> str:
        return "".join(f"{lhs} -> {' '.join(map(str, rhs))}\n" for lhs, rhs in self.productions)


def parse_grammar(text: str) -> Grammar:
    """Parse the line-oriented ``LHS -> sym sym | sym ...`` format."""
    rules: list[tuple[str, tuple[Symbol, ...]]] = []
    kinds: dict[str, str] = {}

    def declare(name, kind, lineno, col):
        prev = kinds.setdefault(name, kind)
        if prev != kind:
            raise GrammarError(f"{name!r} used both as {prev} and as {kind}", lineno, col)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = []
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None:  # only trailing whitespace left
                break
            col = m.start(m.lastgroup) + 1
            if m.lastgroup == "bad":
                raise GrammarError(f"unexpected character {m.group('bad')!r}", lineno, col)
            tokens.append((m.lastgroup, m.group(m.lastgroup), col))
            pos = m.end()
        if len(tokens) < 2 or tokens[0][0] != "ident" or tokens[1][0] != "arrow":
            col = tokens[0][2] if tokens else 1
            raise GrammarError("expected 'LHS -> ...'", lineno, col)
        lhs = tokens[0][1]
        declare(lhs, NONTERMINAL, lineno, tokens[0][2])
        alt: list[Symbol] = []
        for kind, value, col in tokens[2:] + [("bar", "|", len(line) + 1)]:
            if kind == "bar":
                if not alt:
                    raise GrammarError(f"empty right-hand side for {lhs!r}", lineno, col)
                rules.append((lhs, tuple(alt)))
                alt = []
            elif kind == "arrow":
                raise GrammarError("unexpected '->'", lineno, col)
            elif kind == "term":
                declare(value, TERMINAL, lineno, col)
                alt.append(T(value))
            else:
                declare(value, NONTERMINAL, lineno, col)
                alt.append(N(value))
    return Grammar.from_rules(rules)


@dataclass(frozen=True)
class CnfGrammar:
    """Grammar in the normal form ``A -> B C`` / ``A -> x`` over dense indices.

    ``binary_rules`` is an ordered, duplicate-free tuple; its order is the
    rule scan order used by the length-annotated closure.
    """

    nonterm_names: tuple[str, ...]
    binary_rules: tuple[tuple[int, int, int], ...]
    terminal_rules: dict[str, frozenset[int]] = field(hash=False)

    def __post_init__(self):
        n = len(self.nonterm_names)
        if n < 1:
            raise GrammarError("CNF grammar needs at least one nonterminal")
        if len(set(self.nonterm_names)) != n:
            raise GrammarError("duplicate nonterminal names")
        for rule in self.binary_rules:
            if not all(0 <= x < n for x in rule):
                raise GrammarError(f"binary rule {rule} out of range")
        if len(set(self.binary_rules)) != len(self.binary_rules):
            raise GrammarError("duplicate binary rules")
        for x, lhs_set in self.terminal_rules.items():
            if not all(0 <= a < n for a in lhs_set):
                raise GrammarError(f"terminal rule for {x!r} out of range")

    @classmethod
    def build(cls, names, binary_rules, terminal_rules) -> "CnfGrammar":
        """Build from loose inputs; ``terminal_rules`` is an iterable of (A, x)."""
        binary = tuple(dict.fromkeys(tuple(r) for r in binary_rules))
        term: dict[str, set[int]] = {}
        for a, x in terminal_rules:
            term.setdefault(x, set()).add(a)
        return cls(tuple(names), binary, {x: frozenset(s) for x, s in term.items()})

    @property
    def nonterm_count(self) -> int:
        return len(self.nonterm_names)

    def index(self, name: str) -> int:
        try:
            return self.nonterm_names.index(name)
        except ValueError:
            raise KeyError(f"unknown nonterminal {name!r}") from None

    def terminal_pairs(self) -> list[tuple[int, str]]:
        return sorted((a, x) for x, s in self.terminal_rules.items() for a in s)

    def rule_count(self) -> int:
        return len(self.binary_rules) + sum(len(s) for s in self.terminal_rules.values())

    def to_grammar(self) -> Grammar:
        names = self.nonterm_names
        rules = [(names[a], (N(names[b]), N(names[c]))) for a, b, c in self.binary_rules]
        rules += [(names[a], (T(x),)) for a, x in self.terminal_pairs()]
        return Grammar(names, frozenset(self.terminal_rules), tuple(rules))


def to_cnf(g: Grammar) -> CnfGrammar:
    """Convert ``g`` into an equivalent CNF grammar.

    Steps: binarize long rules right-nested (``A -> X1 A#1``,
    ``A#1 -> X2 X3``), lift terminals of binary rules into one shared
    preterminal per terminal, then remove unit rules using the reflexive
    transitive closure of the unit relation.  Fresh names contain ``#``,
    which user grammars cannot, so they never collide.  Useless symbols are
    kept.
    """
    names: list[str] = list(g.nonterminals)
    counter = 0

    def fresh(base: str) -> str:
        nonlocal counter
        counter += 1
        name = f"{base}#{counter}"
        names.append(name)
        return name

    # binarization
    short: list[tuple[str, tuple[Symbol, ...]]] = []
    for lhs, rhs in g.productions:
        head = lhs
        while len(rhs) > 2:
            nxt = fresh(lhs)
            short.append((head, (rhs[0], N(nxt))))
            head, rhs = nxt, rhs[1:]
        short.append((head, rhs))

    # terminal lifting
    preterminal: dict[str, str] = {}
    lifted: list[tuple[str, tuple[Symbol, ...]]] = []
    for lhs, rhs in short:
        if len(rhs) == 2:
            new = []
            for sym in rhs:
                if sym.is_terminal:
                    if sym.name not in preterminal:
                        preterminal[sym.name] = fresh(sym.name)
                    sym = N(preterminal[sym.name])
                new.append(sym)
            rhs = tuple(new)
        lifted.append((lhs, rhs))
    for x, p in preterminal.items():
        lifted.append((p, (T(x),)))

    # unit-rule elimination
    unit: dict[str, set[str]] = {n: {n} for n in names}
    for lhs, rhs in lifted:
        if len(rhs) == 1 and not rhs[0].is_terminal:
            unit[lhs].add(rhs[0].name)
    changed = True
    while changed:
        changed = False
        for a in names:
            reach = set().union(*(unit[b] for b in unit[a]))
            if reach - unit[a]:
                unit[a] |= reach
                changed = True

    index = {n: i for i, n in enumerate(names)}
    binary: list[tuple[int, int, int]] = []
    terminal: list[tuple[int, str]] = []
    for lhs, rhs in lifted:
        if len(rhs) == 1 and not rhs[0].is_terminal:
            continue
        for a in names:
            if lhs not in unit[a]:
                continue
            if len(rhs) == 1:
                terminal.append((index[a], rhs[0].name))
            else:
                binary.append((index[a], index[rhs[0].name], index[rhs[1].name]))
    return CnfGrammar.build(names, binary, terminal)


def cyk_member(cnf: CnfGrammar, start: int, word: Sequence[str]) -> bool:
    """CYK recognition of ``word`` from nonterminal index ``start``."""
    n = len(word)
    if n == 0:
        return False
    # table[i][l] = set of nonterminals deriving word[i:i+l+1]
    table = [[set() for _ in range(n)] for _ in range(n)]
    for i, x in enumerate(word):
        table[i][0] = set(cnf.terminal_rules.get(x, ()))
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            cell = table[i][length - 1]
            for split in range(1, length):
                left = table[i][split - 1]
                right = table[i + split][length - split - 1]
                if not left or not right:
                    continue
                for a, b, c in cnf.binary_rules:
                    if b in left and c in right:
                        cell.add(a)
    return start in table[0][n - 1]


def _rule_table(g: Union[Grammar, CnfGrammar]) -> dict[str, list[tuple[Symbol, ...]]]:
    if isinstance(g, CnfGrammar):
        g = g.to_grammar()
    table: dict[str, list[tuple[Symbol, ...]]] = {n: [] for n in g.nonterminals}
    for lhs, rhs in g.productions:
        table[lhs].append(rhs)
    return table


def enumerate_language(g: Union[Grammar, CnfGrammar], start: Union[str, int], max_len: int) -> set[tuple[str, ...]]:
    """All words of length 1..max_len derivable from ``start``.

    Breadth-first search over leftmost sentential forms.  Without epsilon
    rules every symbol yields at least one terminal, so forms longer than
    ``max_len`` are pruned.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if isinstance(start, int):
        if not isinstance(g, CnfGrammar):
            raise TypeError("integer start requires a CnfGrammar")
        start = g.nonterm_names[start]
    rules = _rule_table(g)
    if start not in rules:
        raise KeyError(f"unknown nonterminal {start!r}")

    words = set()
    seen = {(N(start),)}
    queue = deque(seen)
    while queue:
        form = queue.popleft()
        pos = next((k for k, s in enumerate(form) if not s.is_terminal), None)
        if pos is None:
            words.add(tuple(s.name for s in form))
            continue
        for rhs in rules[form[pos].name]:
            new = form[:pos] + rhs + form[pos + 1:]
            if len(new) <= max_len and new not in seen:
                seen.add(new)
                queue.append(new)
    return words
