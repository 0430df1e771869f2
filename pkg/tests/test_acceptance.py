"""The twelve acceptance criteria, one test each.

The terminal summary prints a PASS/FAIL line per criterion (see
conftest.py).  Run alone with ``pytest tests/test_acceptance.py``.
"""

import itertools

import numpy as np

import oracles
from rational_kit import fixtures
from rational_kit.automata import Alphabet, determinize, dfa_isomorphic, enumerate_language, run_dfa, subset_automaton, to_dfa
from rational_kit.logic import compile_formula, dfa_to_mso
from rational_kit.minimize import minimal_dfa, minimize
from rational_kit.monoid import FiniteMonoid, is_aperiodic, monoid_recognizes, syntactic_monoid, transition_monoid
from rational_kit.ops import decide_equivalence
from rational_kit.pumping import NO_REFUTATION, check_certificate, refute_rationality
from rational_kit.regex import compile_regex, extract_regex, parse_regex
from rational_kit.starfree import extract_starfree, is_fo_definable, starfree_to_fo

AB = Alphabet(("a", "b"))
MAX_LEN = 6


def test_criterion_1_coffee_machine_has_27_short_words():
    words = enumerate_language(fixtures.coffee_machine(), 5)
    assert len(words) == 27
    assert len(set(words)) == 27
    assert set(words) == oracles.language(fixtures.coffee_machine(), 5)


def test_criterion_2_mod3_reverse_binary():
    d = fixtures.mod3_reverse_binary()
    for n in range(201):
        assert run_dfa(d, fixtures.reverse_binary(n)).accepted == (n % 3 == 0), n
    assert not run_dfa(d, fixtures.reverse_binary(19)).accepted
    assert run_dfa(d, fixtures.reverse_binary(93)).accepted


def test_criterion_3_determinization_sizes():
    a = fixtures.contains_ab_nfa()
    det = determinize(a)
    assert det.dfa.num_states == 4
    assert set(det.subsets) == {frozenset(s) for s in ({0}, {0, 1}, {0, 2}, {0, 1, 2})}
    assert subset_automaton(a).num_states == 8


def test_criterion_4_exponential_blowup():
    for n in range(3, 7):
        a = fixtures.a_at_distance(n)
        m = minimal_dfa(a)
        assert m.num_states >= 2 ** (n - 1), n
        assert oracles.separated_prefixes(a, n - 1, n - 2) == 2 ** (n - 1)


def test_criterion_5_minimization(dfa_corpus):
    red = minimize(fixtures.six_state_redundant())
    assert red.dfa.num_states == 3
    names = fixtures.six_state_redundant().names
    classes = sorted(tuple(names[q] for q in block) for block in red.partition.blocks)
    assert classes == [("1", "2", "3"), ("4", "5"), ("6",)]

    chain = fixtures.a_chain_minimal()
    assert dfa_isomorphic(minimize(chain).dfa, chain)

    for d in dfa_corpus:
        moore = minimize(d, "moore").dfa
        marking = minimize(d, "pair_marking").dfa
        assert dfa_isomorphic(moore, marking)
        assert moore.num_states == oracles.nerode_class_count(d)


def test_criterion_6_monoid_tables():
    m = transition_monoid(fixtures.ab_star_minimal())
    assert m.size == 6
    index = [m.element_of(w) for w in fixtures.AB_STAR_REPRESENTATIVES]
    assert sorted(index) == list(range(6))
    names = fixtures.AB_STAR_ELEMENTS
    for i, row in enumerate(fixtures.AB_STAR_TABLE):
        for j, expected in enumerate(row):
            assert names[index.index(m.mul(index[i], index[j]))] == expected

    assert transition_monoid(fixtures.five_cycle_and_swap()).size == 120
    assert transition_monoid(fixtures.full_transformations_5()).size == 3125
    assert len(oracles.transition_maps(fixtures.five_cycle_and_swap())) == 120


def test_criterion_7_aperiodicity():
    assert is_aperiodic(syntactic_monoid(fixtures.ab_star_minimal()).monoid)

    m = transition_monoid(fixtures.ab_star_with_group())
    ap = is_aperiodic(m)
    assert not ap
    gamma2, gamma3 = m.element_of("aa"), m.element_of("aaa")
    assert ap.witness in (gamma2, gamma3)
    assert set(ap.cycle) == {gamma2, gamma3}

    assert not is_fo_definable(fixtures.even_length())
    assert is_fo_definable(fixtures.ab_star_minimal())
    assert is_fo_definable(fixtures.contains_ab_dfa())


def test_criterion_8_regex_automaton_logic_round_trips(regex_corpus, nfa_corpus, sentence_corpus):
    mismatches = []
    universe = oracles.words(AB.symbols, MAX_LEN)

    for e in regex_corpus:
        expected = oracles.regex_language(e, AB.symbols, MAX_LEN)
        nfa = compile_regex(e, AB)
        if oracles.language(nfa, MAX_LEN) != expected:
            mismatches.append(("regex->nfa", e))
        back = extract_regex(nfa)
        if oracles.regex_language(back, AB.symbols, MAX_LEN) != expected:
            mismatches.append(("nfa->regex", e))

    for a in nfa_corpus:
        expected = oracles.language(a, MAX_LEN)
        d = minimal_dfa(a)
        again = compile_formula(dfa_to_mso(d), AB)
        if oracles.language(again, MAX_LEN) != expected:
            mismatches.append(("dfa->mso->dfa", a))

    for phi in sentence_corpus:
        d = compile_formula(phi, AB)
        for w in universe:
            if oracles.nfa_accepts(d, w) != oracles.holds(w, phi):
                mismatches.append(("mso->dfa", phi, w))
                break

    assert mismatches == []


def test_criterion_9_star_free_cycle(aperiodic_corpus):
    failures = []
    for d in aperiodic_corpus:
        expression = extract_starfree(d).expression
        if not decide_equivalence(compile_regex(expression, AB), d):
            failures.append(("extract", d))
            continue
        sentence_dfa = compile_formula(starfree_to_fo(expression), AB)
        if not decide_equivalence(sentence_dfa, d):
            failures.append(("to-fo", d))
        if not is_aperiodic(syntactic_monoid(sentence_dfa).monoid):
            failures.append(("aperiodic", d))
    assert failures == []


def test_criterion_10_ab_star_witness():
    extracted = extract_starfree(fixtures.ab_star_minimal()).expression
    reference = parse_regex("eps | (a(a|b)* & (a|b)*b & ~((a|b)*(aa|bb)(a|b)*))", alphabet=AB)
    assert decide_equivalence(compile_regex(extracted, AB), compile_regex(reference, AB))


def test_criterion_11_pumping():
    anbn = refute_rationality("anbn", "simple", 4)
    assert anbn and check_certificate(anbn)

    equal = refute_rationality("equal-count", "prefix_bounded", 4)
    assert equal and check_certificate(equal)
    assert "".join(equal.word) == "aaaabbbb"

    loose = refute_rationality("equal-count", "simple", 2)
    assert not loose
    assert loose.status == NO_REFUTATION


def test_criterion_12_right_zero_monoid_is_not_syntactic():
    table = fixtures.right_zero_monoid_table()
    m = FiniteMonoid.from_table(table)
    violations = []
    checked = 0
    for k in (1, 2, 3):
        alphabet = Alphabet(("a", "b", "c")[:k])
        for images in itertools.product(range(4), repeat=k):
            letter_images = dict(zip(alphabet.symbols, images))
            for bits in itertools.product((0, 1), repeat=4):
                accepting = [x for x in range(4) if bits[x]]
                d = monoid_recognizes(m, letter_images, accepting, alphabet)
                size = syntactic_monoid(d).monoid.size
                expected = oracles.syntactic_quotient_size(table.tolist(), 0, images, set(accepting))
                checked += 1
                if size >= 4 or size != expected:
                    violations.append((k, images, accepting, size, expected))
    assert checked == 16 * (4 + 16 + 64)
    assert violations == []
    assert not np.array_equal(table, table.T)
