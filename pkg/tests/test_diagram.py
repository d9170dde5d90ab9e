import pytest

from qschur.diagram import (basis_pair, eval_diagram, independence_report, invariant_series, parse_diagram,
                            predicted_count, psi_element, psi_family)
from qschur.kronecker import merge_action, split_action, uv_signature
from qschur.operator import BoundaryError, compare, compose
from qschur.permcomb import coloured_cosets, datum_from_matrix
from qschur.ring import ParseError, Poly, parse_poly

D = (1, 1)

WORKED = ("id[3t+3e]; split[3t->1t|2t@1]; split[2t->1t|1t@2]; split[3e->1e|2e@4]; split[2e->1e|1e@5]; "
          "cc[e->t@4]; cc[e->t@6]; coupon[1]; cross[@3]; mx[@4,te]; cross[@2]; cc[t->e@3]; "
          "merge[1t|1t->2t@1]; merge[1e|1e->2e@2]; merge[1t|1t->2t@3]")


def test_parse_idempotent():
    dg = parse_diagram("id[(1,1)+(1,1)]")
    assert dg.source == dg.target == (D, D)
    op = eval_diagram(dg)
    P = parse_poly("u1*v2", op.source.sig)
    assert op(P) == P


def test_parse_two_nodes():
    dg = parse_diagram("split[2d->d|d]; coupon[u1+u2]")
    assert len(dg.nodes) == 2 and dg.target == (D, D)


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_diagram("merge[d|d->2d")
    assert e.value.pos == 0
    with pytest.raises(ParseError) as e:
        parse_diagram("id[d+d]; bogus")
    assert e.value.pos == 9


def test_boundary_mismatch():
    with pytest.raises(BoundaryError):
        parse_diagram("id[d+d]; merge[a0|a1->d@1]")
    with pytest.raises(BoundaryError):
        parse_diagram("id[2t]; cc[e->t@1]")


def test_split_then_merge_multiplies():
    op = eval_diagram(parse_diagram("split[d->a0|a1]; merge[a0|a1->d]"), "m")
    sig = op.source.sig
    for t in ("1", "u1", "v1^2"):
        P = parse_poly(t, sig)
        assert op(P) == parse_poly(f"(u1-v1)*({t})", sig)


def test_functorial():
    a, b = "split[2d->d|d]", "cross[@1]; merge[d|d->2d]"
    whole = eval_diagram(parse_diagram(f"{a}; {b}"))
    parts = compose(eval_diagram(parse_diagram("id[d+d]; " + b)), eval_diagram(parse_diagram(a)))
    assert compare(whole, parts, 6)


def test_associativity_as_diagrams():
    lhs = eval_diagram(parse_diagram("split[3d->d|2d]; split[2d->d|d@2]"))
    rhs = eval_diagram(parse_diagram("split[3d->2d|d]; split[2d->d|d@1]"))
    assert compare(lhs, rhs, 6)


def test_text_roundtrip():
    dg = parse_diagram(WORKED)
    assert parse_diagram(dg.to_text()).to_text() == dg.to_text()


def test_worked_coloured_example():
    beta, gamma = ((3, "t"), (3, "e")), ((2, "t"), (2, "e"), (2, "t"))
    datum = datum_from_matrix((3, 3), (2, 2, 2), ((1, 1, 1), (1, 1, 1)))
    dg = psi_element(datum, "1", beta, gamma)
    assert dg.to_text() == WORKED
    op = eval_diagram(parse_diagram(WORKED))
    assert op.source.label == "(3t,3e)" and op.target.label == "(2t,2e,2t)"
    out = op(Poly.one(op.source.sig))
    assert op.target.contains(out) and out


def test_psi_identity_element():
    [datum] = coloured_cosets(((1, 1),), ((1, 1),))
    op = eval_diagram(psi_element(datum, "1", (D,), (D,)))
    P = parse_poly("u1+v1", op.source.sig)
    assert op(P) == P


def test_psi_block_swap():
    data = coloured_cosets((D, D), (D, D))
    swaps = [d for d in data if d.word]
    assert swaps
    text = psi_element(swaps[-1], "1", (D, D), (D, D)).to_text()
    assert "cross" in text and "split" in text and "merge" in text


def test_independence_examples():
    sig = uv_signature(D)
    one = eval_diagram(parse_diagram("id[d]"))
    r = independence_report([one], "m", 2)
    assert (r.rank, r.elements, r.independent) == (1, 1, True)
    e1 = eval_diagram(parse_diagram("id[d]; coupon[u1+v1]"))
    r = independence_report([one, e1], "m", 2)
    assert r.independent and r.as_dict()["verdict"].startswith("independent")
    dup = independence_report([one, one], "m", 4)
    assert not dup.independent and dup.verdict.startswith("not separated")


def test_psi_delta_delta_independent():
    fam = psi_family((D, D), (D, D), 4)
    r = independence_report([dg for *_, dg in fam], "m", 4)
    assert r.independent and r.elements == predicted_count((D, D), (D, D), 4)


def test_invariant_series():
    # one block of size 2: 1/((1-t)(1-t^2)) = 1, 1, 2, 2, 3
    assert invariant_series([2], 4) == [1, 1, 2, 2, 3]
    assert invariant_series([], 3) == [1, 0, 0, 0]
    assert invariant_series([1, 1], 2) == [1, 2, 3]


@pytest.mark.parametrize("beta,gamma", [((D,), (D,)), (((1, 0), (0, 1)), ((0, 1), (1, 0))), (((2, 1),), ((1, 1), (1, 0)))])
def test_counts_agree_with_enumeration(beta, gamma):
    for Dg in (0, 2, 4, 6):
        assert len(psi_family(beta, gamma, Dg)) == predicted_count(beta, gamma, Dg)


def test_basis_pair_report():
    r = basis_pair(((1, 0), (0, 1)), (D,), "m", 6)
    assert r.ok and r.as_dict()["beta"] == "(a0,a1)"
