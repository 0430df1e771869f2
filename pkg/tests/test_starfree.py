import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rational_kit import corpus, fixtures
from rational_kit.automata import Alphabet, Dfa, complete
from rational_kit.errors import ContractError
from rational_kit.logic import Valuation, compile_formula, decide_mso, eval_formula, fragment, parse_formula
from rational_kit.monoid import is_aperiodic, syntactic_monoid, transition_monoid
from rational_kit.ops import decide_equivalence
from rational_kit.regex import EMPTY, Complement, Letter, compile_regex, is_star_free_syntax, parse_regex
from rational_kit.starfree import extract_starfree, is_fo_definable, relativize, starfree_to_fo

AB = Alphabet(("a", "b"))
UNARY = Alphabet(("a",))
AB_STAR_STARFREE = "eps | (a~0 & ~0b & ~(~0(aa|bb)~0))"


def rx(text, alphabet=AB):
    return compile_regex(parse_regex(text, alphabet=alphabet), alphabet)


def sentence_words(phi, n=4, alphabet=AB):
    return {w for w in oracles.words(alphabet.symbols, n) if oracles.holds(w, phi)}


# -- deciding -------------------------------------------------------------------------------


def test_fo_definability_examples():
    ab_star = is_fo_definable(parse_regex("(ab)*"), AB)
    assert ab_star and ab_star.monoid_size == 6
    even = is_fo_definable(fixtures.even_length())
    assert not even
    assert even.witness == "a" and set(even.cycle) == {"1", "a"}
    assert is_fo_definable(complete(fixtures.contains_ab_dfa()))


def test_fo_definability_witness_names_a_group():
    result = is_fo_definable(fixtures.ab_star_with_group())
    # the minimal automaton of (ab)* has no group, whatever automaton we start from
    assert result
    mod3 = is_fo_definable(fixtures.mod3_reverse_binary())
    assert not mod3 and len(mod3.cycle) >= 2


# -- extraction -------------------------------------------------------------------------------


def test_single_state_automata():
    accept_all = extract_starfree(Dfa(AB, [[0, 0]], 0, {0}))
    assert accept_all.expression == Complement(EMPTY)
    assert accept_all.derivation.root.case == "single-state"
    reject_all = extract_starfree(Dfa(AB, [[0, 0]], 0, set()))
    assert reject_all.expression == EMPTY


def test_ab_star_extraction_matches_the_known_expression():
    result = extract_starfree(fixtures.ab_star_minimal())
    assert is_star_free_syntax(result.expression)
    assert decide_equivalence(compile_regex(result.expression, AB), rx(AB_STAR_STARFREE))
    assert decide_equivalence(compile_regex(result.expression, AB), rx("(ab)*"))


def test_unary_base_case():
    d = Dfa(UNARY, [[1], [2], [2]], 0, {2})
    result = extract_starfree(d)
    assert result.derivation.root.case == "unary"
    assert is_star_free_syntax(result.expression)
    assert decide_equivalence(compile_regex(result.expression, UNARY), rx("aaa*", UNARY))


def test_permutation_letters_act_as_identity():
    d = Dfa(AB, [[0, 0], [1, 1], [2, 2]], 0, {0, 2})
    assert transition_monoid(d).size == 1
    result = extract_starfree(d)
    assert result.derivation.root.case == "permutation"
    for (q, q1), e in result.pairs.items():
        assert e == (Complement(EMPTY) if q == q1 else EMPTY)


def test_pairs_cover_every_state_pair():
    d = fixtures.contains_aaa_run_length()
    result = extract_starfree(d)
    assert set(result.pairs) == {(p, q) for p in range(4) for q in range(4)}
    for (p, q), e in result.pairs.items():
        target = Dfa(d.alphabet, d.delta, p, {q})
        assert decide_equivalence(compile_regex(e, AB), target)


def test_extraction_rejects_groups():
    with pytest.raises(ContractError):
        extract_starfree(fixtures.even_length())


def test_derivation_trace_renders():
    text = extract_starfree(fixtures.ab_star_minimal()).derivation.render()
    assert text.startswith("split:")
    assert "letter=a" in text


# -- star-free expressions to sentences -------------------------------------------------------


def test_letter_sentence():
    phi = starfree_to_fo(Letter("a"))
    assert sentence_words(phi, 2) == {("a",)}


def test_full_language_sentence_is_valid():
    assert decide_mso(starfree_to_fo(Complement(EMPTY)), AB, "valid")
    assert not decide_mso(starfree_to_fo(EMPTY), AB, "satisfiable")


def test_ab_star_sentence_matches_the_four_conjunct_description():
    phi = starfree_to_fo(parse_regex(AB_STAR_STARFREE, dialect="star-free", alphabet=AB))
    assert fragment(phi).fo_order
    described = parse_formula(
        "!(ex1 x. ex1 y. ('a'(x) & 'a'(y) & S(x,y)))"
        " & !(ex1 x. ex1 y. ('b'(x) & 'b'(y) & S(x,y)))"
        " & all1 x. ((all1 y. !(y<x)) -> 'a'(x))"
        " & all1 x. ((all1 y. !(x<y)) -> 'b'(x))"
    )
    assert decide_equivalence(compile_formula(phi, AB), compile_formula(described, AB))
    assert decide_equivalence(compile_formula(phi, AB), rx("(ab)*"))


def test_starfree_to_fo_rejects_star():
    with pytest.raises(ContractError):
        starfree_to_fo(parse_regex("a*"))


def test_relativize_examples():
    starts_with_a = parse_formula("ex1 x.(all1 y. !(y<x) & 'a'(x))")
    assert relativize(parse_formula("true"), "t", "below") == parse_formula("true")
    upto = relativize(starts_with_a, "t", "at_or_below")
    assert eval_formula("abab", Valuation({"t": 1}), upto)
    below = relativize(starts_with_a, "t", "below")
    assert not eval_formula("abab", Valuation({"t": 0}), below)
    with pytest.raises(ContractError):
        relativize(starts_with_a, "x", "below")
    with pytest.raises(ContractError):
        relativize(parse_formula("ex2 X. true"), "t", "below")


# -- properties ---------------------------------------------------------------------------------

fo_sentences = st.builds(
    lambda seed: corpus.random_sentence(seed, 4, AB, second_order=False), st.integers(0, 10**6)
)


@settings(max_examples=40)
@given(fo_sentences, st.sampled_from(["below", "at_or_below", "strictly_above"]))
def test_relativization_restricts_to_a_factor(phi, mode):
    rel = relativize(phi, "t", mode)
    for w in oracles.words(AB.symbols, 4):
        for i in range(len(w)):
            part = {"below": w[:i], "at_or_below": w[: i + 1], "strictly_above": w[i + 1 :]}[mode]
            assert oracles.holds(w, rel, {"t": i}) == oracles.holds(part, phi)


@settings(max_examples=40)
@given(fo_sentences)
def test_first_order_sentences_have_aperiodic_syntactic_monoids(phi):
    assert is_aperiodic(syntactic_monoid(compile_formula(phi, AB)).monoid)


@settings(max_examples=40)
@given(st.builds(lambda seed: corpus.random_regex(seed, 7, AB, extended=True, star=False), st.integers(0, 10**6)))
def test_starfree_to_fo_defines_the_expression(e):
    phi = starfree_to_fo(e)
    assert fragment(phi).fo_order
    expected = oracles.regex_language(e, AB.symbols, 4)
    assert sentence_words(phi, 4) == expected
    assert decide_equivalence(compile_formula(phi, AB), compile_regex(e, AB))


@settings(max_examples=20)
@given(st.builds(lambda seed: corpus.random_regex(seed, 5, AB, extended=True, star=False), st.integers(0, 10**6)))
def test_fresh_variable_translation_agrees(e):
    literal = starfree_to_fo(e, reuse_variables=False)
    assert decide_equivalence(compile_formula(literal, AB), compile_formula(starfree_to_fo(e), AB))


def test_derivation_measure_decreases(aperiodic_corpus):
    for d in aperiodic_corpus:
        for node in extract_starfree(d, validate=False).derivation.root.walk():
            for child in node.children:
                assert child.measure < node.measure


def test_extraction_is_validated_against_the_automaton(aperiodic_corpus):
    for d in aperiodic_corpus[:20]:
        result = extract_starfree(d)
        assert oracles.regex_language(result.expression, AB.symbols, 5) == oracles.language(d, 5)
