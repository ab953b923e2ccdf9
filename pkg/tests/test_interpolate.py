import json

import pytest
from hypothesis import given, settings

from rosserlog.countermodel.search import Unresolved
from rosserlog.decide import Logic
from rosserlog.interpolate import (
    Enumerator, InterpolantReport, PreconditionError, gl_uniform, gr_uniform, grcirc_uniform, grminus_uniform,
    lyndon_interpolant, normalize, pool_for, uniform, verify_uniform,
)
from rosserlog.semantics.models import FragmentError
from rosserlog.syntax import (
    BOT, TOP, Indexed, atom, iff, has_rbox, implies, lyndon_scope_holds, parse, ddag_holds, variables,
)
from strategies import formulas, provable_pairs

P = parse


def equivalent(dec, logic, a, b):
    return dec.provable(logic, iff(a, b))


# -- Lyndon / Craig ------------------------------------------------------------

@pytest.mark.parametrize("logic, a, b, c", [
    ("gr", "[]p & [R]q", "[R]q | r", "[R]q"),
    ("grcirc", "[R]p & <>~bot", "<>p | q", "<>p"),
    ("gl", "[](p & q)", "[]p | r", "[]p"),
])
def test_lyndon_examples(logic, a, b, c):
    rep = lyndon_interpolant(logic, P(a), P(b))
    assert isinstance(rep, InterpolantReport)
    assert rep.interpolant == P(c)
    assert rep.ok and len(rep.obligations) == 4
    assert json.loads(json.dumps(rep.to_json()))["interpolant"] == c


def test_craig_mode_agrees_on_the_examples():
    rep = lyndon_interpolant("gl", P("[](p & q)"), P("[]p | r"), mode="craig")
    assert rep.ok and rep.interpolant == P("[]p")


def test_lyndon_respects_polarity():
    # p occurs only negatively in B, so p itself is out of scope
    a, b = P("p & ~p"), P("~p")
    lyn = lyndon_interpolant("gl", a, b)
    assert lyn.ok and lyndon_scope_holds(lyn.interpolant, a, b)
    assert lyn.interpolant == BOT


def test_preconditions():
    with pytest.raises(PreconditionError):
        lyndon_interpolant("gl", P("p"), P("[]p"))
    with pytest.raises(ValueError):
        lyndon_interpolant("grminus", P("p"), P("p"))
    with pytest.raises(ValueError):
        lyndon_interpolant("gl", P("p"), P("p"), mode="beth")


def test_budget_exhaustion_is_reported():
    out = lyndon_interpolant("gl", P("[]([]p -> p)"), P("[]p"), budget=2)
    assert isinstance(out, Unresolved)
    assert out.stats["enumerated"] == 2 and "2 candidates" in out.reason
    assert lyndon_interpolant("gl", P("[]([]p -> p)"), P("[]p")).ok


def test_interpolation_is_deterministic():
    a, b = P("[R]p & [](p -> q)"), P("<>p -> <>q | [R]q")
    x = lyndon_interpolant("gr", a, b).to_json()
    y = lyndon_interpolant("gr", a, b).to_json()
    assert x["interpolant"] == y["interpolant"]


@pytest.mark.parametrize("logic", ["gl", "grcirc", "gr"])
def test_random_interpolants_pass_all_obligations(dec, logic):
    pairs = provable_pairs(dec, logic, seed=41, count=25, box_only=(logic == "gl"))
    assert len(pairs) == 25
    for a, b in pairs:
        rep = lyndon_interpolant(logic, a, b, decider=dec)
        assert isinstance(rep, InterpolantReport), (a.text, b.text)
        c = rep.interpolant
        assert dec.provable(logic, implies(a, c)) and dec.provable(logic, implies(c, b))
        assert lyndon_scope_holds(c, a, b) and ddag_holds(c, a, b)


def test_box_fragment_gr_interpolants_are_rbox_free(dec):
    for a, b in provable_pairs(dec, "gr", seed=42, count=25, box_only=True):
        rep = lyndon_interpolant("gr", a, b, decider=dec)
        assert rep.ok and not has_rbox(rep.interpolant), (a.text, b.text)


# -- enumeration and normalization -----------------------------------------------

@settings(max_examples=150)
@given(formulas(max_leaves=6))
def test_normalize_preserves_equivalence(dec, f):
    assert equivalent(dec, "grminus", f, normalize(f))
    assert normalize(normalize(f)) == normalize(f)


def test_normalize_examples():
    assert normalize(P("~~p")) == P("p")
    assert normalize(P("q | bot | p | q")) == normalize(P("p | q"))
    assert normalize(P("p | ~p")) == TOP
    assert normalize(P("[]~bot | q")) == TOP
    # Rosser payloads are left alone
    assert normalize(P("[R]~~p")) == P("[R]~~p")


def test_enumerator_is_canonical():
    leaves = [BOT, atom("p"), atom("q")]
    a = Enumerator(leaves, 5).all()
    b = Enumerator(list(reversed(leaves)), 5).all()
    assert a == b
    assert len(set(a)) == len(a)
    assert all(normalize(f) == f for f in a)
    sizes = [s for s, _ in Enumerator(leaves, 5)]
    assert sizes == sorted(sizes)


def test_enumerator_depth_bound():
    fs = Enumerator([atom("p")], 6, max_depth=1).all()
    assert P("[]p") in fs and P("[][]p") not in fs


def test_pool_only_refutes_non_theorems(dec):
    pool = pool_for("gr", [P("[R]p"), P("p")])
    assert not pool.refutes(P("[R]p"), P("[]p"))
    assert not pool.refutes(TOP, P("~[R]bot"))
    assert pool.refutes(TOP, P("[R]p"))


# -- uniform interpolation -----------------------------------------------------------

def test_gl_uniform_examples(dec):
    r = gl_uniform(P("p & []q"), ["p"], depth=1)
    assert r.ok and equivalent(dec, "gl", r.candidate, P("[]q"))
    r = gl_uniform(P("p"), ["p"])
    assert r.ok and equivalent(dec, "gl", r.candidate, TOP)
    a = P("[]p -> q")
    r = gl_uniform(a, ["r"])
    assert r.ok and equivalent(dec, "gl", r.candidate, a)
    with pytest.raises(FragmentError):
        gl_uniform(P("[R]p"), ["p"])


def test_verify_uniform_examples():
    a = P("p & []q")
    ev = verify_uniform(TOP, a, ["p"], "gl")
    assert not ev.ok and ev.counterexample == P("[]q")
    assert ev.clause1 and ev.clause2
    ev = verify_uniform(P("[]q"), a, ["p"], "gl", depth=1)
    assert ev.ok and ev.tested > 0
    ev = verify_uniform(a, a, [], "gl")
    assert ev.ok
    ev = verify_uniform(P("p"), a, ["p"], "gl")
    assert not ev.clause1


def test_grminus_uniform_examples(dec):
    r = grminus_uniform(P("[R]p & q"), ["q"], depth=2)
    assert r.ok
    assert "q" not in {k.name for k in variables(r.candidate)}
    assert equivalent(dec, "grminus", r.candidate, P("[R]p"))
    r = grminus_uniform(P("[R]p"), ["p"])
    assert Indexed(P("p")) in r.trace["Q"]
    assert r.ok and not variables(r.candidate)
    # no Rosser boxes: the GL engine on A itself
    r = grminus_uniform(P("p & []q"), ["p"], depth=1)
    assert r.trace["psi_conjunction"] == TOP and r.trace["gl_input"] == P("p & []q")
    assert equivalent(dec, "gl", r.candidate, P("[]q"))


def test_grcirc_uniform_examples(dec):
    r = grcirc_uniform(P("[][R]~bot | [R]p"), ["p"], depth=2)
    assert r.trace["A_top"] == P("[]~bot | [R]p")
    assert r.ok
    r = grcirc_uniform(P("[R]~bot"), ["q"])
    assert r.trace["A_top"] == TOP
    assert r.ok and equivalent(dec, "grcirc", r.candidate, TOP)


def test_gr_uniform_examples(dec):
    r = gr_uniform(P("[R]bot | p"), ["p"], depth=2)
    assert r.trace["pipeline_input"] == P("~[R]bot & ([R]bot | p)")
    assert r.ok and dec.provable("gr", implies(P("[R]bot | p"), r.candidate))
    r = gr_uniform(P("[R]bot"), [], depth=2)
    assert r.ok and equivalent(dec, "gr", r.candidate, BOT)


def test_uniform_dispatch_and_json():
    r = uniform("GR-", P("[R]p & q"), ["q"], depth=1, verify=False)
    assert r.logic is Logic.GRMinus and r.evidence is None and r.exact_ok
    obj = json.loads(json.dumps(uniform("gl", P("p & []q"), ["p"], depth=1).to_json()))
    assert obj["forget"] == ["p"] and obj["evidence"]["clause3_failures"] == []
    with pytest.raises(ValueError):
        uniform("n", P("[R]p"), ["p"])
