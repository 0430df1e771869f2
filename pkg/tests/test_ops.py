import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rational_kit import corpus, fixtures, ops
from rational_kit.automata import Alphabet, Dfa, complete, enumerate_language, is_empty, to_dfa
from rational_kit.errors import ContractError, InputError
from rational_kit.ops import Morphism, decide_equivalence, decide_inclusion
from rational_kit.regex import compile_regex, parse_regex

AB = Alphabet(("a", "b"))
ABCD = Alphabet(("a", "b", "c", "d"))
N = 7


def lang(a, n=N):
    return set(enumerate_language(a, n))


def rx(text, alphabet=AB):
    return compile_regex(parse_regex(text, alphabet=alphabet), alphabet)


def interleavings(u, v):
    if not u:
        return {v}
    if not v:
        return {u}
    return {(u[0],) + w for w in interleavings(u[1:], v)} | {(v[0],) + w for w in interleavings(u, v[1:])}


def subsequences(u):
    return {tuple(u[i] for i in keep) for r in range(len(u) + 1) for keep in itertools.combinations(range(len(u)), r)}


# -- complement, union, product --------------------------------------------------------------


def test_complement_of_contains_ab_is_bstar_astar():
    assert decide_equivalence(ops.complement(fixtures.contains_ab_dfa()), fixtures.bstar_astar())


def test_complement_is_an_involution():
    d = complete(fixtures.coffee_machine())
    assert ops.complement(ops.complement(d)).finals == d.finals


def test_complement_of_all_final_is_empty():
    assert is_empty(ops.complement(ops.universal(AB)))


def test_complement_needs_complete_dfa():
    with pytest.raises(ContractError):
        ops.complement(fixtures.bstar_astar().to_dfa())


def test_union_of_letters():
    assert lang(ops.union_disjoint(rx("a"), rx("b")), 3) == {("a",), ("b",)}


def test_union_with_empty_automaton():
    a = fixtures.contains_ab_nfa()
    assert decide_equivalence(ops.union_disjoint(a, ops.empty_automaton(AB)), a)


def test_union_of_a_language_and_its_complement_is_everything():
    u = ops.union_disjoint(fixtures.contains_ab_dfa(), fixtures.bstar_astar())
    assert len(lang(u, 4)) == 31  # 2^0 + ... + 2^4, ε included


def test_intersection_with_complement_is_empty():
    d = fixtures.contains_ab_dfa()
    assert is_empty(ops.product(d, ops.complement(d)))
    assert is_empty(ops.product(d, complete(fixtures.bstar_astar())))


def test_product_of_dfas_is_a_dfa():
    p = ops.product(to_dfa(rx("a(a|b)*")), to_dfa(rx("(a|b)*a")))
    assert isinstance(p, Dfa)
    expected = {w for w in oracles.words("ab", 6) if w and w[0] == "a" and w[-1] == "a"}
    assert lang(p, 6) == expected


def test_union_mode_needs_complete_inputs():
    with pytest.raises(ContractError):
        ops.product(fixtures.bstar_astar(), fixtures.contains_ab_dfa(), "union")
    with pytest.raises(InputError):
        ops.product(fixtures.contains_ab_dfa(), fixtures.contains_ab_dfa(), "xor")


def test_binary_ops_require_equal_alphabets():
    with pytest.raises(ContractError):
        ops.product(fixtures.contains_ab_dfa(), fixtures.coffee_machine())


# -- concatenation and star -----------------------------------------------------------------


def test_concat_of_letters():
    assert lang(ops.concat(rx("a"), rx("b"))) == {("a", "b")}


def test_concat_with_epsilon_is_neutral():
    a = fixtures.contains_ab_nfa()
    assert decide_equivalence(ops.concat(a, ops.epsilon_automaton(AB)), a)


def test_concat_bstar_astar():
    assert decide_equivalence(ops.concat(rx("b*"), rx("a*")), fixtures.bstar_astar())


def test_star_of_empty_is_epsilon():
    assert lang(ops.star(ops.empty_automaton(AB))) == {()}


def test_star_of_ab_matches_fixture():
    assert lang(ops.star(ops.word_automaton(AB, "ab")), 8) == lang(fixtures.ab_star_minimal(), 8)


def test_star_is_idempotent():
    a = rx("a|bb")
    assert decide_equivalence(ops.star(ops.star(a)), ops.star(a))


# -- morphisms --------------------------------------------------------------------------


def test_morphism_parse_and_apply():
    phi = Morphism.parse("a->bc b->eps")
    assert phi.source.symbols == ("a", "b")
    assert phi.target.symbols == ("b", "c")
    assert phi("aba") == ("b", "c", "b", "c")
    assert phi.show() == "a->bc b->eps"
    with pytest.raises(InputError):
        Morphism.parse("a->b a->c")
    with pytest.raises(InputError):
        Morphism(AB, AB, {"a": "a"})


def test_morphic_image_collapsing_letters():
    phi = Morphism(AB, Alphabet(("a",)), {"a": "a", "b": "a"})
    img = ops.morphic_image(fixtures.contains_ab_nfa(), phi)
    assert lang(img, 6) == {("a",) * n for n in range(2, 7)}


def test_morphic_image_identity():
    phi = Morphism(AB, AB, {"a": "a", "b": "b"})
    assert decide_equivalence(ops.morphic_image(fixtures.contains_ab_nfa(), phi), fixtures.contains_ab_nfa())


def test_morphic_image_erasing():
    phi = Morphism(AB, AB, {"a": "eps", "b": "b"})
    assert lang(ops.morphic_image(ops.word_automaton(AB, "ab"), phi)) == {("b",)}


def test_inverse_morphic_image_identity():
    phi = Morphism(AB, AB, {"a": "a", "b": "b"})
    assert decide_equivalence(ops.inverse_morphic_image(fixtures.contains_ab_nfa(), phi), fixtures.contains_ab_nfa())


def test_inverse_morphic_image_of_mod3():
    mod3 = fixtures.mod3_reverse_binary()
    phi = Morphism(Alphabet(("x", "y")), mod3.alphabet, {"x": "11", "y": "0"})
    inv = ops.inverse_morphic_image(mod3, phi)
    rng = random.Random(11)
    for _ in range(20):
        w = tuple(rng.choice("xy") for _ in range(rng.randint(0, 8)))
        assert oracles.nfa_accepts(inv, w) == oracles.nfa_accepts(mod3, phi(w))


def test_inverse_image_of_erasing_morphism_is_everything():
    phi = Morphism(AB, AB, {"a": "eps", "b": "eps"})
    inv = ops.inverse_morphic_image(fixtures.bstar_astar(), phi)
    assert decide_equivalence(inv, ops.universal(AB))


# -- quotients and closures -------------------------------------------------------------------


def test_left_quotient_by_ab():
    q = ops.quotient(rx("ab(a|b)*"), ops.word_automaton(AB, "ab"), "left")
    assert decide_equivalence(q, ops.universal(AB))


def test_quotient_by_epsilon_is_identity():
    a = fixtures.contains_ab_nfa()
    assert decide_equivalence(ops.quotient(a, ops.epsilon_automaton(AB), "left"), a)
    assert decide_equivalence(ops.quotient(a, ops.epsilon_automaton(AB), "right"), a)


def test_prefixes_of_contains_ab_is_everything():
    q = ops.quotient(fixtures.contains_ab_nfa(), ops.universal(AB), "right")
    assert decide_equivalence(q, ops.universal(AB))


def test_mirror_is_an_involution_and_reverses_factors():
    a = fixtures.contains_ab_nfa()
    assert decide_equivalence(ops.closure_unary(ops.closure_unary(a, "mirror"), "mirror"), a)
    assert lang(ops.closure_unary(a, "mirror"), 6) == {w for w in oracles.words("ab", 6) if "ba" in "".join(w)}


def test_subwords_of_ab():
    assert lang(ops.closure_unary(ops.word_automaton(AB, "ab"), "subwords")) == {(), ("a",), ("b",), ("a", "b")}


def test_unknown_closure_kind():
    with pytest.raises(InputError):
        ops.closure_unary(fixtures.contains_ab_nfa(), "infixes")


def test_shuffle_of_two_words():
    s = ops.shuffle(ops.word_automaton(ABCD, "ab"), ops.word_automaton(ABCD, "cd"))
    assert lang(s, 4) == interleavings(("a", "b"), ("c", "d"))
    assert len(lang(s, 4)) == 6


def test_shuffle_with_epsilon_and_itself():
    a = fixtures.contains_ab_nfa()
    assert decide_equivalence(ops.shuffle(a, ops.epsilon_automaton(AB)), a)
    aa = ops.shuffle(ops.word_automaton(AB, "a"), ops.word_automaton(AB, "a"))
    assert lang(aa) == {("a", "a")}


# -- decisions -----------------------------------------------------------------------------


def test_inclusion_reflexive():
    assert decide_inclusion(fixtures.coffee_machine(), fixtures.coffee_machine())


def test_inclusion_counterexample_is_epsilon():
    result = decide_inclusion(fixtures.ab_star_minimal(), fixtures.contains_ab_dfa())
    assert not result and result.counterexample == () and result.side == "left"


def test_inclusion_of_factor_conditions():
    assert decide_inclusion(fixtures.contains_aaa_run_length(), rx("(a|b)*a(a|b)*"))
    assert not decide_inclusion(rx("(a|b)*a(a|b)*"), fixtures.contains_aaa_run_length())


def test_equivalence_examples():
    assert decide_equivalence(fixtures.contains_ab_nfa(), fixtures.contains_ab_dfa())
    assert decide_equivalence(fixtures.contains_aaa_last_two(), fixtures.contains_aaa_run_length())
    diff = decide_equivalence(fixtures.contains_ab_dfa(), fixtures.bstar_astar())
    assert not diff and diff.counterexample == ()


# -- properties ------------------------------------------------------------------------------

automata = st.builds(
    lambda seed, n: corpus.random_nfa(seed, n, AB, density=0.35, eps_prob=0.1),
    st.integers(0, 10**6),
    st.integers(1, 5),
)


@given(automata, automata)
def test_binary_ops_match_set_semantics(a1, a2):
    l1, l2 = oracles.language(a1, N), oracles.language(a2, N)
    d1, d2 = to_dfa(a1), to_dfa(a2)
    assert lang(ops.product(a1, a2)) == l1 & l2
    assert lang(ops.product(d1, d2, "union")) == l1 | l2
    assert lang(ops.union_disjoint(a1, a2)) == l1 | l2
    assert lang(ops.concat(a1, a2)) == {u + v for u in l1 for v in l2 if len(u + v) <= N}
    assert lang(ops.shuffle(a1, a2), 6) == {
        w for u in l1 for v in l2 if len(u) + len(v) <= 6 for w in interleavings(u, v)
    }


@settings(max_examples=30)
@given(automata)
def test_unary_ops_match_set_semantics(a):
    base = oracles.language(a, N)
    universe = set(oracles.words("ab", N))
    assert lang(ops.complement_language(a)) == universe - base
    star = {()}
    frontier = {()}
    while frontier:
        frontier = {u + v for u in frontier for v in base - {()} if len(u + v) <= N} - star
        star |= frontier
    assert lang(ops.star(a)) == star
    assert lang(ops.closure_unary(a, "mirror")) == {w[::-1] for w in base}
    long = oracles.language(a, N)
    assert lang(ops.closure_unary(a, "prefixes"), 4) >= {w[:i] for w in long for i in range(len(w) + 1) if i <= 4}
    assert lang(ops.closure_unary(a, "subwords"), 4) >= {s for w in long for s in subsequences(w) if len(s) <= 4}
    for w in lang(ops.closure_unary(a, "factors"), 3):
        assert not is_empty(ops.product(a, rx(f"(a|b)*{''.join(w) or 'eps'}(a|b)*")))


@given(automata, automata)
def test_de_morgan(a1, a2):
    left = ops.complement_language(ops.product(a1, a2))
    right = ops.product(ops.complement_language(a1), ops.complement_language(a2), "union")
    assert decide_equivalence(left, right)


@given(automata)
def test_left_quotient_identity(a):
    for u in oracles.words("ab", 3):
        q = ops.quotient(a, ops.word_automaton(AB, u), "left")
        for w in oracles.words("ab", 4):
            assert oracles.nfa_accepts(q, w) == oracles.nfa_accepts(a, u + w)


@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
def test_product_of_dfas_stays_deterministic(seed, n1, n2):
    d1 = corpus.random_dfa(seed, n1, AB, partial_prob=0.2)
    d2 = corpus.random_dfa(seed + 1, n2, AB, partial_prob=0.2)
    p = ops.product(d1, d2)
    assert isinstance(p, Dfa)
    assert lang(p) == oracles.language(d1, N) & oracles.language(d2, N)


@given(automata, automata)
def test_decisions_agree_with_enumeration(a1, a2):
    l1, l2 = oracles.language(a1, N), oracles.language(a2, N)
    inc = decide_inclusion(a1, a2)
    if inc:
        assert l1 <= l2
    else:
        w = inc.counterexample
        assert oracles.nfa_accepts(a1, w) and not oracles.nfa_accepts(a2, w)
        shorter = [u for u in l1 - l2 if len(u) < len(w)]
        assert shorter == []
