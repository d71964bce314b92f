from .budget import BudgetClock, BudgetExhausted, SearchBudget, SearchResult, Status
from .certificate import Certificate, VerificationError, register_verifier, verify
from .clique import adjacency_from_edges, adjacency_from_predicate, is_clique, max_clique
from .exact_cover import ODD, PARTITION, exact_cover_min
from .numbers import Rational, fmt_rational, parse_rational, popcount

__all__ = [
    "BudgetClock", "BudgetExhausted", "SearchBudget", "SearchResult", "Status",
    "Certificate", "VerificationError", "register_verifier", "verify",
    "adjacency_from_edges", "adjacency_from_predicate", "is_clique", "max_clique",
    "ODD", "PARTITION", "exact_cover_min",
    "Rational", "fmt_rational", "parse_rational", "popcount",
]
