from .agent import ProbabilisticAgent
from .operations import (
    Decomposition,
    MaxEntropyReport,
    build_qh,
    chsh_report,
    chsh_sum,
    correlation_E,
    decompose,
    entropy,
    join_conditionals,
    max_entropy_report,
    possibilistic_collapse,
    realizes,
    recompose,
    uniform_on_support,
)
