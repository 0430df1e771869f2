import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rational_kit import corpus, fixtures
from rational_kit.automata import Alphabet, Dfa, Nfa
from rational_kit.errors import InputError
from rational_kit.formats import (
    read_automaton,
    read_certificate,
    read_formula,
    read_monoid,
    read_morphism,
    write_automaton,
    write_certificate,
    write_formula,
    write_monoid,
    write_morphism,
)
from rational_kit.logic import compile_formula, to_text
from rational_kit.monoid import monoid_isomorphic, transition_monoid
from rational_kit.ops import Morphism, decide_equivalence
from rational_kit.pumping import check_certificate, refute_rationality

AB = Alphabet(("a", "b"))

CONTAINS_AB = """\
# words with an a followed by a b
alphabet: a b
states: 3
initial: 0
final: 2
0 a 0
0 b 0
0 a 1
1 b 2
2 a 2
2 b 2
"""


# -- automata -------------------------------------------------------------------------------


def test_nondeterministic_file_reads_as_nfa():
    a = read_automaton(CONTAINS_AB)
    assert isinstance(a, Nfa)
    assert decide_equivalence(a, fixtures.contains_ab_dfa())


def test_deterministic_file_reads_as_dfa():
    text = "alphabet: a b\nstates: 2\nnames: even odd\ninitial: 0\nfinal: 0\n0 a 1\n0 b 1\n1 a 0\n1 b 0\n"
    d = read_automaton(text)
    assert isinstance(d, Dfa)
    assert d.names == ("even", "odd")
    assert write_automaton(d) == text


def test_epsilon_transitions_keep_an_nfa():
    a = read_automaton("alphabet: a\nstates: 2\ninitial: 0\nfinal: 1\n0 eps 1\n1 a 1\n")
    assert isinstance(a, Nfa)
    assert oracles.language(a, 3) == {(), ("a",), ("a", "a"), ("a", "a", "a")}


def test_fixture_automata_round_trip():
    for a in (fixtures.coffee_machine(), fixtures.six_state_redundant(), fixtures.bstar_astar(), fixtures.contains_ab_nfa()):
        text = write_automaton(a)
        assert write_automaton(read_automaton(text)) == text


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("states: 2\n", 1),
        ("alphabet: a\nstates: two\n", 2),
        ("alphabet: a\nstates: 2\ninitial: 5\nfinal: 0\n", 3),
        ("alphabet: a\nstates: 2\ninitial: 0\nfinal: 1\n0 c 1\n", 5),
        ("alphabet: a\nstates: 2\ninitial: 0\nfinal: 1\n\n0 a\n", 6),
        ("alphabet: a\nstates: 2\ninitial: 0\nfinal: 1\n0 a 1\n0 a 1\n", 6),
        ("alphabet: a\nstates: 2\nnames: p\ninitial: 0\nfinal: 1\n", 3),
        ("alphabet: a a\nstates: 1\ninitial: 0\nfinal: 0\n", 1),
    ],
)
def test_automaton_errors_carry_line_numbers(text, line):
    with pytest.raises(InputError) as info:
        read_automaton(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}")


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(1, 5), st.booleans())
def test_random_automata_round_trip(seed, n, nondeterministic):
    a = corpus.random_nfa(seed, n, AB) if nondeterministic else corpus.random_dfa(seed, n, AB)
    text = write_automaton(a)
    back = read_automaton(text)
    assert write_automaton(back) == text
    assert oracles.language(back, 5) == oracles.language(a, 5)


# -- morphisms -----------------------------------------------------------------------------------


def test_morphism_round_trip():
    phi = read_morphism("source: a b\ntarget: a b c\nmorphism: a->bc\nmorphism: b->eps\n")
    assert phi.images == {"a": ("b", "c"), "b": ()}
    assert read_morphism(write_morphism(phi)).images == phi.images


def test_morphism_errors():
    with pytest.raises(InputError) as info:
        read_morphism("source: a\ntarget: b\nmorphism: a->c\n")
    assert info.value.line == 3
    with pytest.raises(InputError):
        read_morphism("source: a\n")
    with pytest.raises(InputError) as info:
        read_morphism("source: a\nimage: a->b\n")
    assert info.value.line == 2


def test_morphism_writer_needs_single_character_targets():
    phi = Morphism(AB, Alphabet(("x1", "x2")), {"a": ("x1",), "b": ("x2",)})
    with pytest.raises(InputError):
        write_morphism(phi)


# -- formulas ------------------------------------------------------------------------------------


def test_formula_spans_lines():
    phi, alphabet = read_formula("# first letter is a\nalphabet: a b\nex1 x.\n  (all1 y. !(y<x) & 'a'(x))\n")
    assert alphabet == AB
    assert oracles.holds(("a", "b"), phi) and not oracles.holds(("b", "a"), phi)


def test_formula_error_lines_count_from_the_file_start():
    with pytest.raises(InputError) as info:
        read_formula("alphabet: a b\nex1 x.\n  'c'(x)\n")
    assert info.value.line == 3
    with pytest.raises(InputError) as info:
        read_formula("alphabet: a b\n")
    assert info.value.line == 2
    with pytest.raises(InputError):
        read_formula("ex1 x. 'a'(x)\n")


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_random_sentences_round_trip(seed):
    phi = corpus.random_sentence(seed, 4, AB)
    text = write_formula(phi, AB)
    back, alphabet = read_formula(text)
    assert to_text(back) == to_text(phi)
    assert decide_equivalence(compile_formula(back, alphabet), compile_formula(phi, AB))


# -- monoids ----------------------------------------------------------------------------------------


def test_monoid_round_trip_keeps_generators():
    m = transition_monoid(fixtures.ab_star_minimal())
    text = write_monoid(m)
    back = read_monoid(text)
    assert write_monoid(back) == text
    assert back.generators == m.generators
    assert monoid_isomorphic(back, m)


def test_monoid_names_line():
    m = read_monoid("size: 2\nidentity: 0\nnames: 1 z\ngen: a -> 1\n0 1\n1 1\n")
    assert m.name(1) == "z"
    assert "names: 1 z" in write_monoid(m)


@pytest.mark.parametrize(
    "text, line",
    [
        ("identity: 0\n0\n", 1),
        ("size: 2\nidentity: 0\n0 1\n", 3),
        ("size: 2\nidentity: 0\n0 1\n1\n", 4),
        ("size: 2\nidentity: 0\n0 1\n1 7\n", 4),
        ("size: 1\nidentity: 0\n0\ngen: a -> 0\n", 4),
        ("size: 1\nidentity: 0\ngen: a -> 0\ngen: a -> 0\n0\n", 4),
        ("size: x\n", 1),
    ],
)
def test_monoid_errors_carry_line_numbers(text, line):
    with pytest.raises(InputError) as info:
        read_monoid(text)
    assert info.value.line == line


# -- certificates --------------------------------------------------------------------------------------


def test_certificate_round_trip_replays():
    cert = refute_rationality("anbn", "simple", 4)
    text = write_certificate(cert)
    back = read_certificate(text)
    assert back == cert
    assert write_certificate(back) == text
    assert check_certificate(back)


def test_generalized_certificate_keeps_its_template():
    cert = refute_rationality("abcd-mixed", "generalized", 2, search_len=6)
    assert read_certificate(write_certificate(cert)).template == cert.template


def test_certificate_errors():
    text = write_certificate(refute_rationality("anbn", "simple", 2))
    with pytest.raises(InputError) as info:
        read_certificate(text.replace("variant: simple", "variant: sideways"))
    assert info.value.line == 3
    with pytest.raises(InputError):
        read_certificate("\n".join(line for line in text.splitlines() if not line.startswith("word:")))
    broken = text.splitlines()
    row = next(i for i, line in enumerate(broken) if line.startswith("row:"))
    broken[row] = broken[row].replace(":in", ":maybe").replace(":out", ":maybe")
    with pytest.raises(InputError) as info:
        read_certificate("\n".join(broken))
    assert info.value.line == row + 1
