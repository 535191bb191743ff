"""Context-free path querying by Boolean matrix closure."""
from .engine import EngineConfig, closure, evaluate, init_matrix, query_relational, relations
from .grammar import CnfGrammar, Grammar, cyk_member, enumerate_language, parse_grammar, to_cnf
from .graph import Graph, Path, label_alphabet, load_edge_list, load_triples
from .singlepath import closure_lengths, extract_path, init_lengths, query_single_path

__all__ = [
    "CnfGrammar", "EngineConfig", "Grammar", "Graph", "Path",
    "closure", "closure_lengths", "cyk_member", "enumerate_language", "evaluate", "extract_path",
    "init_lengths", "init_matrix", "label_alphabet", "load_edge_list", "load_triples",
    "parse_grammar", "query_relational", "query_single_path", "relations", "to_cnf",
]
