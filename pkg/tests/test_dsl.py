from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from cpair.divisors import INF
from cpair.dsl import canonical_form, parse, serialize
from cpair.errors import ParseError, SemanticError
from cpair.runner import run

SAMPLES = sorted((Path(__file__).resolve().parent.parent / "samples").glob("*.cp"))


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_round_trip(path):
    doc = parse(path.read_text())
    canon = canonical_form(doc)
    assert canonical_form(canon) == canon
    assert parse(serialize(canon)) == canon
    assert serialize(canon) == serialize(doc)


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_canonical_form_runs_the_same_checks(path):
    doc = parse(path.read_text())
    strip = lambda r: [(c.kind, c.args, c.verdict, c.witnesses, c.data) for c in r.checks]
    assert strip(run(doc)) == strip(run(canonical_form(doc)))


def test_empty_document():
    doc = parse("")
    assert doc.checks == [] and serialize(doc) == ""
    assert parse("# only a comment\n\n").checks == []


def test_multiplicity_spellings_agree():
    forms = ["pair Y { (2/3) P ; (1/2) Q ; m=inf L }",
             "pair Y { 2/3 P ; m=2 Q ; (1/1) L }",
             "pair Y { m=3 P ; m=2 Q ; m=inf L }"]
    docs = [canonical_form(parse(f)) for f in forms]
    assert docs[0] == docs[1] == docs[2]
    assert serialize(docs[0]) == "pair Y { m=inf L ; m=3 P ; m=2 Q }\n"


def test_zero_coefficient_is_trivial():
    pair = parse("pair Y { 0 P }").env.pairs["Y"]
    assert pair.boundary.multiplicity("P") == 1
    assert serialize(parse("pair Y { 0 P }")) == "pair Y { m=1 P }\n"


def test_locations_do_not_affect_equality():
    assert parse("pair Y { m=2 P }") == parse("\n\n   pair Y {\n m=2 P\n }")


def test_non_standard_coefficient():
    with pytest.raises(SemanticError) as exc:
        parse("pair Y {\n  (1/3) P }")
    assert exc.value.kind == "NotStandardCoefficient"
    assert (exc.value.line, exc.value.col) == (2, 3)


@pytest.mark.parametrize("text, line, col", [
    ("pair Y { m=2 P", 1, 15),
    ("pair Y { m=2 P }\ncheck frobnicate Y", 2, 7),
    ("check orbifold nothing", 1, 16),
    ("pair Y { m=0 P }", 1, 10),
    ("pair Y { m=2 P }\ncheck cyclic-cover Y Y", 2, 22),
    ("chart A dim 1\npair Y on A { m=2 coord 1 }\nmonomial f : A -> A matrix [[2]]\n"
     "check adapted-sheaf 0 1 f Y", 4, 21),
])
def test_errors_carry_locations(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_pullback_given_twice():
    text = "morphism f : X -> Y {\n  pullback P = 1*Q\n  pullback P = 2*Q\n}"
    with pytest.raises(SemanticError):
        parse(text)


def test_duplicate_names():
    with pytest.raises(SemanticError):
        parse("pair Y { m=2 P }\npair Y { m=3 P }")


names = st.from_regex(r"[A-Z][a-z0-9]{0,3}", fullmatch=True)
mults = st.one_of(st.integers(1, 9), st.just(INF))


@given(st.dictionaries(names, mults, min_size=1, max_size=4))
def test_pair_round_trip(entries):
    body = " ; ".join(f"m={'inf' if m == INF else m} {n}" for n, m in entries.items())
    doc = parse(f"pair Y {{ {body} }}\ncheck cyclic-cover Y\n")
    canon = canonical_form(doc)
    assert parse(serialize(canon)) == canon
    assert canon.env.pairs["Y"].boundary == doc.env.pairs["Y"].boundary
