from .extract import saturate_and_extract_rep
from .formulas import TermNetwork, emit_rho, emit_sigma, eval_formula, parse_formula, to_text
from .network import (
    Composition,
    Join,
    NetworkCheck,
    Prenetwork,
    Witness,
    check_network,
    exists_responses,
    initial_network,
    legal_forall_moves,
)
from .solver import EXISTS, FORALL, GameSolver, Verdict, solve_game, verify_certificate
