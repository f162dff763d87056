from .agent import DecidersAgent
from .classify import Classification, classify
from .hardy import VARIANTS, HardyVariant, hardy_axioms
from .lhv import LhvVerdict, covered_by_instructions, decide_lhv, enumerate_instructions
from .nsp import FarkasCertificate, NspVerdict, decide_nsp, pns_equations
