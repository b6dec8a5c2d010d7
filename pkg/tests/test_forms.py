import pytest

from lagrange_weyl.canonical import CovariantSpace
from lagrange_weyl.cyclotomic import Cyclotomic
from lagrange_weyl.exact import ExactMatrix, rref
from lagrange_weyl.fixtures import FIXTURES
from lagrange_weyl.forms import (algebra_form, compare_printed, format_linear, forms_equal,
                                 parse_entry, parse_form, span_rank, spectrum_forms)
from lagrange_weyl.groups import generated_subgroup, parse_group_spec
from lagrange_weyl.phase_space import PhaseSpace
from lagrange_weyl.weyl import schrodinger_rep


def _form(spec, label):
    ps = PhaseSpace.standard(parse_group_spec(spec))
    H = generated_subgroup(ps.xi, FIXTURES[spec]["lagrangians"][label])
    return ps, H, algebra_form(schrodinger_rep(ps), H)


def test_z2_forms_render():
    assert _form("2", "H1")[2].render() == "[[a,b],[b,a]]"
    assert _form("2", "H2")[2].render() == "[[a,0],[0,b]]"
    assert _form("2", "H3")[2].render() == "[[a,b],[-b,a]]"


@pytest.mark.parametrize("spec,label", [("2", "H1"), ("2", "H2"), ("2", "H3"), ("3", "H1"), ("3", "H2")])
def test_forms_match_fixtures(spec, label):
    form = _form(spec, label)[2]
    assert forms_equal(form.entries, parse_form(FIXTURES[spec]["forms"][label]))
    assert len(form.basis) == int(spec)


def test_spectrum_forms():
    ps, H, form = _form("2", "H1")
    spec = spectrum_forms(form, CovariantSpace(ps, H))
    assert [format_linear(lin, form.params) for _, lin in spec] == ["a+b", "a-b"]
    ps, H, form = _form("3", "H2")
    spec = spectrum_forms(form, CovariantSpace(ps, H))
    assert sorted(format_linear(lin, form.params) for _, lin in spec) == ["a", "b", "c"]


def test_printed_h3_has_single_repair():
    form = _form("3", "H3")[2]
    report = compare_printed(form, FIXTURES["3"]["printed_only"]["H3"])
    assert not report["identical"] and not report["same_span"]
    assert report["single_substitution_repairs"] == [{"row": 1, "col": 2, "printed": "c", "repaired": "b"}]


def test_printed_h4_is_reparametrization():
    form = _form("3", "H4")[2]
    report = compare_printed(form, FIXTURES["3"]["printed_only"]["H4"])
    assert not report["identical"] and report["same_span"]
    assert report["params_outside_algebra"] == [] and report["printed_rank"] == 3


def test_identical_form_compares_clean():
    form = _form("2", "H3")[2]
    report = compare_printed(form, FIXTURES["2"]["forms"]["H3"])
    assert report["identical"] and report["same_span"] and report["single_substitution_repairs"] == []


def test_parse_entry():
    lin = parse_entry("e(1/3)*b-c")
    assert lin["b"] == Cyclotomic.root(1, 3) and lin["c"] == -1
    assert parse_entry("0") == {}
    assert parse_entry("-a")["a"] == -1
    with pytest.raises(ValueError):
        parse_entry("a**b")


def test_forms_equal_is_exact():
    a = parse_form([["a", "b"], ["b", "a"]])
    b = parse_form([["a", "b"], ["-b", "a"]])
    assert forms_equal(a, a) and not forms_equal(a, b)


def test_span_rank_and_rref():
    one, zero = Cyclotomic.rational(1), Cyclotomic.zero()
    w = Cyclotomic.root(1, 3)
    I = ExactMatrix.from_rows([[one, zero], [zero, one]])
    W = I.scaled(w)
    S = ExactMatrix.from_rows([[zero, one], [one, zero]])
    assert span_rank([I, W]) == 1
    assert span_rank([I, S, W]) == 2
    reduced, pivots, _ = rref([[one, w], [w, w * w]])
    assert pivots == [0]
