"""Decision procedures for GL, N, NR, GR-, GR-circ and GR."""
from .gl import BudgetExhausted, GLProver, Witness, witness_model
from .tower import (
    DecisionOutcome, Decider, Logic, Verdict, check_fragment, decide, decide_gl, decide_gr,
    decide_gr_circ, decide_gr_minus, decide_n, decide_nr, default_decider, gl_certificate,
)
