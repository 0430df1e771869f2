import pytest
from hypothesis import given, strategies as st

import oracles
from rational_kit import corpus, fixtures
from rational_kit.automata import Alphabet, Nfa, enumerate_language
from rational_kit.errors import InputError
from rational_kit.ops import Morphism, decide_equivalence
from rational_kit.regex import (
    EMPTY,
    EPSILON,
    Complement,
    Concat,
    Letter,
    Morph,
    Star,
    Union,
    check_dialect,
    compile_regex,
    extract_regex,
    is_star_free_syntax,
    nullable,
    parse_regex,
    regex_size,
    simplify,
    to_text,
)

AB = Alphabet(("a", "b"))
SHOWCASE = "(a*(ab)*|b)*(ba|b*a)*"


def lang(e, n=6):
    return oracles.regex_language(e, AB.symbols, n)


# -- parsing and printing --------------------------------------------------------------


def test_empty_set_star():
    e = parse_regex("0*")
    assert e == Star(EMPTY)
    assert lang(e) == {()}


def test_union_of_letters():
    assert parse_regex("(a|b)") == Union(Letter("a"), Letter("b"))


def test_dialects_are_enforced():
    with pytest.raises(InputError):
        parse_regex("~(0)", dialect="rational")
    with pytest.raises(InputError):
        parse_regex("a*", dialect="star-free")
    with pytest.raises(InputError):
        check_dialect(parse_regex("a&b"), "rational")
    check_dialect(parse_regex("~0 a & b"), "star-free")


def test_syntax_errors_carry_positions():
    with pytest.raises(InputError, match="line 1, column 4"):
        parse_regex("a(b")
    with pytest.raises(InputError):
        parse_regex("a|")
    with pytest.raises(InputError):
        parse_regex("c", alphabet=AB)


def test_precedence():
    e = parse_regex("~a*|b&cd")
    assert isinstance(e, Union)
    assert e.left == Star(Complement(Letter("a")))
    assert to_text(e) == "~a*|b&cd"


def test_morphism_syntax():
    e = parse_regex("map{a->bb, b->eps}(a*b)")
    assert isinstance(e, Morph)
    assert e.phi == Morphism.parse("a->bb b->eps")
    assert to_text(e) == "map{a->bb, b->eps}(a*b)"
    assert set(enumerate_language(compile_regex(e, AB), 4)) == {(), ("b", "b"), ("b",) * 4}


def test_nodes_are_interned():
    assert parse_regex("ab|ba") is parse_regex("ab|ba")
    assert Concat(Letter("a"), Letter("b")) is Concat(Letter("a"), Letter("b"))


# -- compilation -------------------------------------------------------------------------


def test_showcase_expression_compiles():
    e = parse_regex(SHOWCASE)
    a = compile_regex(e, AB)
    assert oracles.nfa_accepts(a, tuple("abab"))
    assert oracles.language(a, 6) == lang(e)


def test_empty_expression():
    assert enumerate_language(compile_regex(parse_regex("0"), AB), 5) == []


def test_star_free_ab_star_compiles_without_star():
    stats = {}
    e = parse_regex("eps | (a~0 & ~0b & ~(~0(aa|bb)~0))", dialect="star-free", alphabet=AB)
    a = compile_regex(e, AB, stats=stats)
    assert "star" not in stats
    assert decide_equivalence(a, fixtures.ab_star_minimal())


# -- extraction and simplification ----------------------------------------------------------


def test_extract_single_loop():
    a = Nfa.from_triples(("a",), 1, [(0, "a", 0)], [0], [0])
    assert to_text(simplify(extract_regex(a))) == "a*"


def test_extract_b_and_fig3():
    b = extract_regex(fixtures.bstar_astar())
    assert decide_equivalence(compile_regex(b, AB), compile_regex(parse_regex("b*a*"), AB))
    f3 = extract_regex(fixtures.contains_ab_nfa())
    assert decide_equivalence(compile_regex(f3, AB), compile_regex(parse_regex("(a|b)*ab(a|b)*"), AB))


def test_simplify_rules():
    assert simplify(Union(EMPTY, Letter("a"))) == Letter("a")
    assert simplify(Star(Star(Letter("a")))) == Star(Letter("a"))
    assert simplify(Concat(EPSILON, Letter("a"))) == Letter("a")
    assert simplify(Concat(EMPTY, Letter("a"))) == EMPTY
    assert simplify(Complement(Complement(Letter("a")))) == Letter("a")


def test_simplify_shrinks_extracted_b():
    e = extract_regex(fixtures.bstar_astar())
    s = simplify(e)
    assert regex_size(s) <= 0.7 * regex_size(e)
    assert lang(s) == lang(e)


def test_nullable():
    assert nullable(parse_regex("a*"))
    assert not nullable(parse_regex("a|b"))
    assert nullable(parse_regex("~a"))
    assert nullable(parse_regex("map{a->eps}(a)"))
    assert not nullable(parse_regex("map{a->b}(a*a)"))


def test_star_free_syntax_check():
    assert is_star_free_syntax(parse_regex("~0a&b"))
    assert not is_star_free_syntax(parse_regex("a*"))


# -- properties ------------------------------------------------------------------------------

expressions = st.builds(lambda seed: corpus.random_regex(seed, 8, AB), st.integers(0, 10**6))
extended = st.builds(lambda seed: corpus.random_regex(seed, 7, AB, extended=True), st.integers(0, 10**6))


@given(expressions)
def test_compile_extract_round_trip(e):
    a = compile_regex(e, AB)
    assert oracles.language(a, 6) == lang(e)
    assert decide_equivalence(a, compile_regex(extract_regex(a), AB))


@given(extended)
def test_print_parse_round_trip(e):
    assert parse_regex(to_text(e), alphabet=AB) == e


@given(extended)
def test_simplify_preserves_language(e):
    s = simplify(e)
    assert regex_size(s) <= regex_size(e)
    assert lang(s) == lang(e)
    assert simplify(s) == s


@given(st.builds(lambda seed: corpus.random_regex(seed, 8, AB, extended=True, star=False), st.integers(0, 10**6)))
def test_star_free_compilation_never_uses_star(e):
    stats = {}
    a = compile_regex(e, AB, stats=stats)
    assert stats.get("star", 0) == 0
    assert oracles.language(a, 5) == lang(e, 5)
