import json

import pytest

from oracles import naive_eval, rosser_refutable_small
from rosserlog.countermodel import (
    Certificate, CertificateError, PreconditionError, Unresolved, certify, gl_countermodel, gr_countermodel,
    gro_countermodel, recheck, search_countermodel, theoretical_bound,
)
from rosserlog.semantics import add_root, is_nontrivial, is_serial, model, model_from_json, validate_gro_frame
from rosserlog.syntax import parse
from strategies import sample_formulas

P = parse


def refutes_independently(cert):
    m = cert.model
    F = m.frame
    return not naive_eval(F.worlds, F.box, F.rosser, m.valuation, cert.focus, cert.formula)


def test_gl_countermodels():
    c = gl_countermodel(P("p -> []p"))
    assert c.verified and len(c.model.frame.worlds) == 2 and refutes_independently(c)
    c = gl_countermodel(P("<>~bot"))
    assert c.verified and len(c.model.frame.worlds) == 1
    with pytest.raises(PreconditionError):
        gl_countermodel(P("[]([]p -> p) -> []p"))


def test_gro_countermodel_for_not_rbox_bot():
    c = gro_countermodel(P("~[R]bot"))
    F = c.model.frame
    assert len(F.worlds) == 1
    assert not F.box and all(not r for _, r in F.relations())
    assert refutes_independently(c)


def test_gro_countermodel_for_rbox_p():
    c = gro_countermodel(P("[R]p"))
    m, w = c.model, c.focus
    succ = [y for x, y in m.frame.rosser(P("p")) if x == w]
    assert any(P("p").key not in m.valuation[y] for y in succ)
    assert c.verified and refutes_independently(c)


def test_gro_countermodel_rejects_theorems():
    with pytest.raises(PreconditionError):
        gro_countermodel(P("[R]~bot"))


def test_gr_countermodels():
    c = gr_countermodel(P("[]p -> p"))
    F = c.model.frame
    assert len(F.worlds) == 2 and is_nontrivial(F) and is_serial(F)
    assert all((c.focus, w) in F.box for w in F.worlds if w != c.focus)
    c = gr_countermodel(P("[R]bot"))
    assert c.verified and is_serial(c.model.frame) and refutes_independently(c)
    with pytest.raises(PreconditionError):
        gr_countermodel(P("~[R]bot"))


def test_unresolved_past_the_world_bound():
    out = search_countermodel(P("[][]bot"), "grcirc", max_worlds=2)
    assert isinstance(out, Unresolved)
    assert out.stats["worlds_tried"] == [1, 2]
    assert json.loads(json.dumps(out.to_json()))["reason"]
    c = search_countermodel(P("[][]bot"), "grcirc", max_worlds=3)
    assert len(c.model.frame.worlds) == 3


def test_theoretical_bound_is_reported():
    b = theoretical_bound(P("[R]p -> p"))
    assert b["phi_size"] > 0 and b["max_chain_length"] >= 1
    c = gro_countermodel(P("[R]p -> p"))
    assert c.meta["theoretical_bound"] == b


def test_certificate_json_and_recheck():
    c = gr_countermodel(P("[]p -> p"))
    obj = json.loads(json.dumps(c.to_json()))
    assert obj["verified"] is True and obj["focus"] == c.focus and obj["formula"] == "[]p -> p"
    m = model_from_json(obj)
    assert m == c.model
    assert recheck(c) is True


def test_certify_refuses_non_refutations():
    m = model([0], [], [])
    with pytest.raises(CertificateError):
        certify(m, 0, P("[R]bot"), "grcirc")
    with pytest.raises(CertificateError):
        certify(m, 0, P("~[R]bot"), "gr")  # one world is not a GR frame


def test_search_is_deterministic():
    f = P("[R](p | q) -> [R]p | <>q")
    a = search_countermodel(f, "grcirc").to_json()
    b = search_countermodel(f, "grcirc").to_json()
    assert a == b


def test_world_count_is_minimal(dec):
    conclusive = 0
    for f in sample_formulas(31, 120, sizes=range(1, 8)):
        if dec.decide("grcirc", f).provable:
            continue
        c = search_countermodel(f, "grcirc")
        n = len(c.model.frame.worlds)
        if n > 3:
            # brute force over 4+ worlds is out of reach
            continue
        assert refutes_independently(c), f.text
        if n > 1:
            smaller = rosser_refutable_small(f, n - 1)
            assert smaller is not True, f.text
            conclusive += smaller is False
    assert conclusive > 10


def test_random_certificates_verify(dec):
    for f in sample_formulas(32, 150, sizes=range(1, 9)):
        for logic in ("grcirc", "gr"):
            if dec.decide(logic, f).provable:
                continue
            c = search_countermodel(f, logic)
            assert isinstance(c, Certificate), (logic, f.text)
            assert c.verified and refutes_independently(c)
            assert validate_gro_frame(c.model.frame).ok
            if logic == "gr":
                assert is_nontrivial(c.model.frame) and is_serial(c.model.frame)


def test_add_root_turns_serial_countermodels_into_gr_ones(dec):
    checked = 0
    for f in sample_formulas(33, 80, sizes=range(1, 8)):
        if dec.decide("grcirc", f).provable:
            continue
        c = search_countermodel(f, "grcirc")
        if not is_serial(c.model.frame):
            continue
        m = add_root(c.model)
        assert is_nontrivial(m.frame) and validate_gro_frame(m.frame).ok
        assert not m.valid(f)
        # a serial refutation survives add_root, so GR cannot prove f either
        assert dec.decide("gr", f).unprovable, f.text
        checked += 1
    assert checked > 5
