import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from roughideal.dsl import (
    ParseError, parse_family, parse_index, parse_radius, parse_scenario, parse_seq, parse_set,
    print_scenario, print_seq, tokenize,
)
from roughideal.exact_sets import interval, naturals, points, tail
from roughideal.generators import eventually_periodic, piecewise_constant_radius, stream_mixture
from roughideal.ideals import FIN
from roughideal.omega_sets import AP, ColsFrom, Finite, Not, Stair, Union
from roughideal.piecewise import negative_example_radius
from roughideal.rough_families import Ball, Degenerate, Table, example21_family, f_prime_family
from roughideal.sequences import alternating, fubini, geometric

CORPUS = sorted((Path(__file__).parent.parent / "scenarios").glob("*.scn"))

MALFORMED = [
    "",
    "seq geo(1,1/2); family table{1 -> tail(1,1/2)}",
    "ideal Q; seq alt; family degenerate",
    "ideal Fin; seq alt",
    "ideal Fin; family degenerate",
    "ideal Fin; seq alt; family ball(r=const 1)",
    "ideal Fin; seq alt; family ball(r=const 1, ajar)",
    "ideal Fin; seq geo(1,2); family degenerate",
    "ideal Fin; seq alt; family table{1 -> {2}}",
    "ideal Fin; seq alt; family ball(r=pw{(-inf,0): 1}, closed)",
    "ideal Fin; seq alt; family ball(r=pw{(-inf,1): 1/x; [1,inf): 1}, closed)",
    "ideal Fin; seq alt; family degenerate; compute everything",
    "ideal Fin; seq alt; family degenerate; expect gamma = [0,1",
    "ideal Fin; seq alt; family degenerate; oracle(prefix=10, prefix=20)",
    "ideal Fin; seq alt; family degenerate; oracle(range=[2,1])",
    "ideal Fin; seq assign{ evens -> 1 }; family degenerate",
    "ideal Fin; seq assign{ ap(0,0) -> 1, default 0 }; family degenerate",
    "ideal FinxFin(pairing=szudzik); seq alt; family degenerate",
    "ideal Fin; seq alt; family degenerate; compute gamma $",
    "ideal Fin; seq periodic([1],[]); family degenerate",
]


def test_spec_example_parses():
    sc = parse_scenario("ideal Fin; seq alt; family ball(r=const 3, open); compute gamma")
    assert sc.ideal == FIN
    assert sc.seq == alternating()
    assert sc.family == Ball(parse_radius("const 3"), closed=False)
    assert sc.compute == ("gamma",)


def test_missing_ideal_error():
    with pytest.raises(ParseError) as e:
        parse_scenario("seq geo(1,1/2); family table{1 -> tail(1,1/2)}")
    assert "expected 'ideal'" in str(e.value)
    assert (e.value.line, e.value.column) == (1, 1)
    assert "ideal" in e.value.expected


def test_empty_input_error_at_origin():
    with pytest.raises(ParseError) as e:
        parse_scenario("")
    assert (e.value.line, e.value.column) == (1, 1)


def test_error_positions_track_lines():
    with pytest.raises(ParseError) as e:
        parse_scenario("ideal Fin;\nseq alt;\nfamily ball(r=const 1, ajar)")
    assert (e.value.line, e.value.column) == (3, 24)
    assert e.value.token == "ajar"


@pytest.mark.parametrize("text", MALFORMED)
def test_malformed_inputs_raise_one_positioned_error(text):
    with pytest.raises(ParseError) as e:
        parse_scenario(text)
    err = e.value
    assert err.line >= 1 and err.column >= 1
    assert str(err).startswith(f"{err.line}:{err.column}: ")


def test_twenty_malformed_inputs():
    assert len(MALFORMED) == 20


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corpus_roundtrip_fixpoint(path):
    sc = parse_scenario(path.read_text(encoding="utf-8"))
    text = print_scenario(sc)
    again = parse_scenario(text)
    assert again == sc
    assert print_scenario(again) == text


def test_corpus_is_nonempty():
    assert len(CORPUS) >= 10


def test_set_forms():
    assert parse_set("[0,1] ∪ {3}") == interval(0, 1) | points(3)
    assert parse_set("[0,1] | {3}") == interval(0, 1) | points(3)
    assert parse_set("(-inf,2)") == interval(float("-inf"), 2, False, False)
    assert parse_set("∅").is_empty() and parse_set("empty").is_empty()
    assert parse_set("tail(1, 1/2, from=3)") == tail(1, Fraction(1, 2), start=3)
    assert parse_set("tail(1, 1/2, closed=true, center=2)") == tail(
        1, Fraction(1, 2), closed=True, center=2)
    assert parse_set("nat(from=4)") == naturals(4)
    assert parse_set("{0.5, -1/4}") == points(Fraction(1, 2), Fraction(-1, 4))


def test_index_forms():
    assert parse_index("evens") == AP(0, 2)
    assert parse_index("fin{3, 1}") == Finite(frozenset({1, 3}))
    assert parse_index("cols(2.., step=3)") == ColsFrom(2, 3)
    assert parse_index("stair(m>=2k-1, odd)") == Stair(2, -1, 1)
    assert parse_index("stair(m>=-3)") == Stair(0, -3)
    assert parse_index("!evens | odds") == Union((Not(AP(0, 2)), AP(1, 2)))


def test_named_sequences_keep_their_spelling():
    for text in ("alt", "geo(1,1/2)", "const(-3/4)", "periodic([1,2],[0])", "fubini", "nat",
                 "vdc", "dense([0,1] ∪ {2})"):
        assert print_seq(parse_seq(text)) == text
    assert parse_seq("geo(1,1/2)") == geometric(1, Fraction(1, 2))
    assert parse_seq("fubini") == fubini()


def test_named_families_roundtrip():
    for F in (example21_family(), f_prime_family(), Ball(negative_example_radius()),
              Degenerate()):
        assert parse_family(F.to_text()) == F


def test_table_requires_eta_in_member():
    with pytest.raises(ParseError, match="must contain eta"):
        parse_family("table{ 2 -> [0,1] }")
    assert isinstance(parse_family("table{ 1/2 -> [0,1] }"), Table)


def test_comments_and_whitespace():
    sc = parse_scenario("# comment\nideal Z # trailing\n\n  seq alt\nfamily degenerate\n")
    assert sc.ideal.kind == "Z"


def test_tokenizer_columns():
    toks = tokenize("ideal  Fin;\n seq")
    assert [(t.text, t.line, t.col) for t in toks[:4]] == [
        ("ideal", 1, 1), ("Fin", 1, 8), (";", 1, 11), ("seq", 2, 2)]


@given(st.integers(0, 10_000))
def test_generated_scenarios_roundtrip(seed):
    rng = random.Random(seed)
    x = eventually_periodic(rng) if rng.random() < 0.5 else stream_mixture(rng)
    F = Ball(piecewise_constant_radius(rng), closed=rng.random() < 0.5)
    ideal = rng.choice(["Fin", "Z", "FinxFin"])
    text = f"ideal {ideal}; seq {print_seq(x)}; family {F.to_text()}; compute gamma"
    sc = parse_scenario(text)
    assert sc.family == F
    assert [sc.seq.value(n) for n in range(40)] == [x.value(n) for n in range(40)]
    assert parse_scenario(print_scenario(sc)) == sc
