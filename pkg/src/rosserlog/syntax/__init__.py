"""Formulas, parsing, polarity sets and syntactic translations."""
from .formula import (
    BOT, TOP, Atom, AtomKey, Box, Falsum, Formula, Indexed, Named, Neg, Or, RBox,
    atom, atoms, big_conj, boxdot, canonical_key, conj, dia, disj, has_box, has_rbox,
    iff, implies, modal_depth, q, rbox_depth, rdia, sort_formulas, variables,
)
from .parser import ParseError, parse, tokenize
from .polarity import (
    SignedLiteralSet, complement, craig_ddag_holds, craig_scope_holds, ddag_holds,
    lyndon_scope_holds, mu, negative_subformulas, phi_closure, positive_subformulas,
    rbox_subformulas, signed_subformulas, subformulas, tau,
)
from .render import render
from .translate import (
    dagger, grminus_reduction, outermost_rosser, psi, psi_context, psi_payloads,
    rosser_payloads, s0, substitute, theta, top_translation, undagger_map,
)

Substitution = dict
