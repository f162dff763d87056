from .agent import QuantumAgent
from .systems import QUANTUM_BUILTINS, epr_system, ghz_system, hardy_system
