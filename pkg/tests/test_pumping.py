import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rational_kit import corpus, fixtures
from rational_kit.automata import Alphabet, Dfa, complete, run_dfa
from rational_kit.errors import ContractError, InputError
from rational_kit.minimize import minimal_dfa
from rational_kit.pumping import (
    INCONCLUSIVE,
    NO_REFUTATION,
    automaton_predicate,
    certify,
    check_certificate,
    parse_counter_program,
    position_templates,
    pump_split,
    pumped,
    refute_rationality,
    verify_pump,
)

AB = Alphabet(("a", "b"))

ANBN_PROGRAM = """
alphabet: a b
a: test seen = 0; inc n
b: inc seen; dec n; test n >= 0
end: test n = 0; accept
"""


def is_anbn(w):
    k = len(w) // 2
    return w == ("a",) * k + ("b",) * k and len(w) % 2 == 0


# -- factorizations ----------------------------------------------------------------------------


def test_pump_split_on_contains_ab():
    d = complete(fixtures.contains_ab_dfa())
    split = pump_split(d, "aabab", range(5))
    assert split.u2
    for m in range(5):
        assert run_dfa(d, pumped(split.u1, split.u2, split.u3, m)).accepted


def test_pump_split_single_state():
    d = Dfa(Alphabet(("a",)), [[0]], 0, {0})
    assert pump_split(d, "aa", (0, 1, 2)) == (0, 1, (), ("a",), ("a",))


def test_pump_split_mod3_zeros():
    d = fixtures.mod3_reverse_binary()
    split = pump_split(d, "000000", range(7))
    for m in range(6):
        assert run_dfa(d, pumped(split.u1, split.u2, split.u3, m)).accepted


def test_pump_split_on_an_nfa():
    a = fixtures.contains_ab_nfa()
    split = pump_split(a, "babab")
    assert oracles.nfa_accepts(a, pumped(split.u1, split.u2, split.u3, 3))


def test_pump_split_preconditions():
    d = complete(fixtures.contains_ab_dfa())
    with pytest.raises(ContractError):
        pump_split(d, "bbbb")
    with pytest.raises(ContractError):
        pump_split(d, "ab")
    with pytest.raises(ContractError):
        pump_split(d, "aabab", (0, 2, 1, 3))


def test_verify_pump_examples():
    assert verify_pump("anbn", "a", "a", "bb", (0, 1, 2)) == {0: False, 1: True, 2: False}
    row = verify_pump("anbn", "ab", "", "", range(4))
    assert len(set(row.values())) == 1
    contains_ab = automaton_predicate(fixtures.contains_ab_dfa())
    assert all(verify_pump(contains_ab, "a", "ab", "b").values())


# -- certificates ------------------------------------------------------------------------------------


def test_anbn_certificate():
    cert = refute_rationality("anbn", "simple", 4)
    assert cert and check_certificate(cert)
    assert is_anbn(cert.word) and len(cert.word) >= 4
    assert len(cert.rows) == len(cert.positions) * (len(cert.positions) - 1) // 2
    long_word = certify("anbn", "aaaabbbb", "simple", 4)
    assert long_word and check_certificate(long_word)


def test_equal_count_prefix_bounded_certificate():
    cert = refute_rationality("equal-count", "prefix_bounded", 4)
    assert cert.word == tuple("aaaabbbb")
    assert cert.positions == (0, 1, 2, 3, 4)
    assert check_certificate(cert)


def test_equal_count_satisfies_the_simple_condition_with_two():
    result = refute_rationality("equal-count", "simple", 2)
    assert not result and result.status == NO_REFUTATION and result.words_checked > 0


def test_suffix_bounded_variant():
    cert = refute_rationality("anbn", "suffix_bounded", 3)
    assert cert and check_certificate(cert)
    assert cert.positions == tuple(range(len(cert.word) - 3, len(cert.word) + 1))


def test_generalized_variant_refutes_the_mixed_language():
    assert not refute_rationality("abcd-mixed", "simple", 2, search_len=6)
    cert = refute_rationality("abcd-mixed", "generalized", 2, search_len=6)
    assert cert and check_certificate(cert)
    assert cert.template.startswith("spread")


def test_position_templates_stay_inside_the_word():
    for label, pos in position_templates(9, 3):
        assert len(pos) == 4 and pos[0] >= 0 and pos[-1] <= 9
        assert all(a < b for a, b in zip(pos, pos[1:]))


def test_budget_exhaustion_is_inconclusive():
    result = refute_rationality("equal-count", "simple", 2, budget=10)
    assert result.status == INCONCLUSIVE


def test_certify_preconditions():
    with pytest.raises(ContractError):
        certify("anbn", "aab", "simple", 2)
    with pytest.raises(ContractError):
        certify("anbn", "ab", "simple", 4)
    with pytest.raises(ContractError):
        certify("anbn", "aabb", "generalized", 2)
    with pytest.raises(InputError):
        certify("anbn", "aabb", "sideways", 2)
    assert certify("equal-count", "abab", "simple", 2) is None


def test_checker_catches_tampering():
    cert = refute_rationality("anbn", "simple", 4)
    dropped = dataclasses.replace(cert, rows=cert.rows[1:])
    assert not check_certificate(dropped)
    row = cert.rows[0]
    flipped = dataclasses.replace(row, outcomes=tuple((e, not r) for e, r in row.outcomes))
    assert not check_certificate(dataclasses.replace(cert, rows=(flipped,) + cert.rows[1:]))
    assert not check_certificate(dataclasses.replace(cert, word=tuple("aabbb")))
    assert not check_certificate(dataclasses.replace(cert, positions=cert.positions[:-1]))
    # replaying against a rational language exposes the wrong predicate
    assert not check_certificate(cert, automaton_predicate(fixtures.contains_ab_dfa()))


# -- counter programs ---------------------------------------------------------------------------------


def test_counter_program_matches_anbn():
    program = parse_counter_program(ANBN_PROGRAM, "anbn-program")
    for w in oracles.words(AB.symbols, 8):
        assert program(w) == is_anbn(w)
    cert = refute_rationality(program, "simple", 4)
    assert cert and check_certificate(cert, program)


def test_counter_program_errors():
    with pytest.raises(InputError, match="line 3"):
        parse_counter_program("alphabet: a b\na: inc n\nb: jump n\n")
    with pytest.raises(InputError):
        parse_counter_program("a: inc n\n")
    with pytest.raises(InputError):
        parse_counter_program("alphabet: a\nc: inc n\n")
    with pytest.raises(InputError, match="line 2"):
        parse_counter_program("alphabet: a\na: test n = x\n")
    with pytest.raises(InputError):
        parse_counter_program("alphabet: a\na: inc n\na: dec n\n")


def test_counter_program_without_end_rejects():
    program = parse_counter_program("alphabet: a\na: inc n\n")
    assert not program(("a",))
    accept_all = parse_counter_program("alphabet: a b\nend: accept\n")
    assert accept_all(()) and accept_all(tuple("abba"))


# -- properties ---------------------------------------------------------------------------------------


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(0, 10**6))
def test_pump_split_is_sound(seed, n, word_seed):
    d = corpus.random_dfa(seed, n, AB)
    accepted = [w for w in oracles.words(AB.symbols, n + 3) if len(w) >= n and run_dfa(d, w).accepted]
    if not accepted:
        return
    w = random.Random(word_seed).choice(accepted)
    split = pump_split(d, w)
    assert split.u1 + split.u2 + split.u3 == w
    assert split.u2
    for m in range(6):
        assert run_dfa(d, pumped(split.u1, split.u2, split.u3, m)).accepted


def test_rational_languages_are_never_refuted():
    rng = random.Random(11)
    machines = []
    while len(machines) < 20:
        d = minimal_dfa(corpus.random_dfa(rng, rng.randint(2, 5), AB))
        n = d.num_states
        if n >= 2 and any(len(w) >= n for w in oracles.language(d, n + 4)):
            machines.append(d)
    for d in machines:
        pred = automaton_predicate(d)
        for variant in ("simple", "prefix_bounded", "suffix_bounded"):
            result = refute_rationality(pred, variant, d.num_states, search_len=4)
            assert not result and result.status == NO_REFUTATION
            assert result.words_checked > 0
