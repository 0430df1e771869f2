"""Pumping lemmas as executable checks.

Every variant of the lemma is phrased the same way here: a word ``w`` of
the language and a strictly increasing sequence of cut points
``i_0 < ... < i_N``; for some pair ``j < k`` the factor between ``i_j`` and
``i_k`` can be pumped.  The corollary variants are just fixed choices of
cut points:

``simple``          every cut point ``0..|w|`` (any factor with ``u2 ≠ ε``)
``prefix_bounded``  ``0..N`` (so ``|u1 u2| ≤ N``)
``suffix_bounded``  ``|w|-N..|w|`` (so ``|u2 u3| ≤ N``)
``generalized``     a sequence of ``N+1`` cut points chosen from a template family

A certificate records, for one word and one cut sequence, a failing exponent
for every pair of cut points.  It proves that no automaton with at most
``n_bound`` states accepts the language.  Not finding one proves nothing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .automata import EPS_TOKEN, Alphabet, Dfa, Nfa, accepts_nfa, as_nfa, run_dfa, words_of_length
from .errors import ContractError, InputError, ResourceError

VARIANTS = ("simple", "prefix_bounded", "suffix_bounded", "generalized")
NO_REFUTATION = "no refutation found"
INCONCLUSIVE = "inconclusive"
DEFAULT_EXPONENTS = (0, 2)


# -- membership predicates ---------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    """A total membership test on words over ``alphabet``."""

    name: str
    alphabet: Alphabet
    test: Callable = field(repr=False, compare=False)

    def __call__(self, word) -> bool:
        return bool(self.test(tuple(word)))


def _anbn(w):
    n = len(w)
    return n % 2 == 0 and all(c == "a" for c in w[: n // 2]) and all(c == "b" for c in w[n // 2 :])


def _equal_count(w):
    return w.count("a") == w.count("b")


def _abcd_mixed(w):
    s = "".join(w)
    if any(f in s for f in ("aa", "bb", "cc", "dd", "ac")):
        return True
    n, r = divmod(len(s), 4)
    return r == 0 and s == "ab" * n + "cd" * n


BUILTIN_PREDICATES = {
    "anbn": Predicate("anbn", Alphabet(("a", "b")), _anbn),
    "equal-count": Predicate("equal-count", Alphabet(("a", "b")), _equal_count),
    "abcd-mixed": Predicate("abcd-mixed", Alphabet(("a", "b", "c", "d")), _abcd_mixed),
}


def automaton_predicate(a, name: str = "automaton") -> Predicate:
    """Membership in the language of an automaton, as a predicate."""
    if isinstance(a, Dfa):
        return Predicate(name, a.alphabet, lambda w: run_dfa(a, w).accepted)
    a = as_nfa(a)
    return Predicate(name, a.alphabet, lambda w: accepts_nfa(a, w).accepted)


def as_predicate(membership, alphabet=None) -> Predicate:
    if isinstance(membership, Predicate):
        return membership
    if isinstance(membership, str):
        if membership not in BUILTIN_PREDICATES:
            known = ", ".join(BUILTIN_PREDICATES)
            raise InputError(f"unknown predicate {membership!r} (built-ins: {known})")
        return BUILTIN_PREDICATES[membership]
    if isinstance(membership, (Dfa, Nfa)):
        return automaton_predicate(membership)
    if callable(membership):
        if alphabet is None:
            raise ContractError("a plain callable predicate needs an explicit alphabet")
        return Predicate(getattr(membership, "__name__", "predicate"), Alphabet.of(alphabet), membership)
    raise ContractError(f"cannot use {membership!r} as a membership predicate")


# Counter programs: one line per letter plus an optional `end` line.
#
#   alphabet: a b
#   a: test seen = 0; inc n
#   b: inc seen; dec n; test n >= 0
#   end: test n = 0; accept
#
# Counters start at 0.  A failing test rejects the word, `accept` accepts it
# on the spot, and a word that reaches the end of its `end` line without an
# `accept` is rejected.

_TESTS = {
    "=": lambda x, n: x == n,
    "!=": lambda x, n: x != n,
    "<": lambda x, n: x < n,
    "<=": lambda x, n: x <= n,
    ">": lambda x, n: x > n,
    ">=": lambda x, n: x >= n,
}


def _parse_instruction(text: str, line: int):
    parts = text.split()
    if parts == ["accept"]:
        return ("accept",)
    if len(parts) == 2 and parts[0] in ("inc", "dec"):
        return (parts[0], parts[1])
    if len(parts) == 4 and parts[0] == "test" and parts[2] in _TESTS:
        try:
            value = int(parts[3])
        except ValueError:
            raise InputError(f"test needs an integer, got {parts[3]!r}", line) from None
        return ("test", parts[1], parts[2], value)
    raise InputError(f"cannot read instruction {text.strip()!r} (inc C | dec C | test C OP INT | accept)", line)


def parse_counter_program(text: str, name: str = "program") -> Predicate:
    alphabet = None
    blocks = {}
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        head = head.strip()
        if not sep:
            raise InputError("expected 'label: instructions'", number)
        if head == "alphabet":
            alphabet = Alphabet.of(body.split())
            continue
        if head in blocks:
            raise InputError(f"second block for {head!r}", number)
        blocks[head] = tuple(_parse_instruction(i, number) for i in body.split(";") if i.strip())
    if alphabet is None:
        raise InputError("counter program has no 'alphabet:' line")
    unknown = set(blocks) - set(alphabet.symbols) - {"end"}
    if unknown:
        raise InputError(f"blocks for symbols outside the alphabet: {sorted(unknown)}")
    end = blocks.get("end", ())

    def run(word):
        counters = {}
        for block in [blocks.get(c, ()) for c in word] + [end]:
            for ins in block:
                op = ins[0]
                if op == "accept":
                    return True
                if op == "inc":
                    counters[ins[1]] = counters.get(ins[1], 0) + 1
                elif op == "dec":
                    counters[ins[1]] = counters.get(ins[1], 0) - 1
                elif not _TESTS[ins[2]](counters.get(ins[1], 0), ins[3]):
                    return False
        return False

    def test(word):
        for c in word:
            if c not in alphabet.symbols:
                raise InputError(f"symbol {c!r} is not in the program alphabet")
        return run(word)

    return Predicate(name, alphabet, test)


# -- factorizations of accepted words -----------------------------------------------


class PumpSplit(NamedTuple):
    j: int
    k: int
    u1: tuple
    u2: tuple
    u3: tuple


def _check_positions(positions, n: int) -> tuple:
    positions = tuple(int(i) for i in positions)
    if len(positions) < 2:
        raise ContractError("need at least two cut points")
    if positions[0] < 0 or positions[-1] > n or any(a >= b for a, b in zip(positions, positions[1:])):
        raise ContractError(f"cut points must be strictly increasing within 0..{n}")
    return positions


def pump_split(a, w, positions=None) -> PumpSplit:
    """Find ``j < k`` with equal states at cut points ``i_j`` and ``i_k`` on an accepting path.

    With ``N+1`` cut points and ``N`` at least the number of states, two
    of the sampled states coincide and the factor between them loops.
    """
    a = as_nfa(a) if not isinstance(a, Dfa) else a
    w = tuple(w)
    if positions is None:
        positions = range(len(w) + 1)
    positions = _check_positions(positions, len(w))
    if len(positions) - 1 < a.num_states:
        raise ContractError(
            f"{len(positions)} cut points cannot force a repeat among {a.num_states} states; need at least {a.num_states + 1}"
        )
    if isinstance(a, Dfa):
        states = [a.initial]
        q = a.initial
        for x in a.alphabet.encode(w):
            if q is not None:
                q = int(a.delta[q, x])
                q = q if q >= 0 else None
            states.append(q)
        if q is None or q not in a.finals:
            raise ContractError(f"{' '.join(w) or EPS_TOKEN} is not accepted")
    else:
        acc = accepts_nfa(a, w)
        if not acc:
            raise ContractError(f"{' '.join(w) or EPS_TOKEN} is not accepted")
        # state reached right after each letter (the initial state for position 0)
        states = [acc.path.states[0]]
        for label, q in zip(acc.path.labels, acc.path.states[1:]):
            if label is not None:
                states.append(q)
    first = {}
    for k, i in enumerate(positions):
        p = states[i]
        if p in first:
            j = first[p]
            return PumpSplit(j, k, w[: positions[j]], w[positions[j] : i], w[i:])
        first[p] = k
    raise AssertionError("pigeonhole failed; the path is inconsistent")  # unreachable


def pumped(u1, u2, u3, m: int) -> tuple:
    return tuple(u1) + tuple(u2) * m + tuple(u3)


def verify_pump(membership, u1, u2, u3, exponents=range(5), alphabet=None) -> dict:
    """``m ↦ (u1 u2^m u3 ∈ L)`` for each requested exponent."""
    pred = as_predicate(membership, alphabet)
    return {m: pred(pumped(u1, u2, u3, m)) for m in exponents}


# -- refutation certificates ----------------------------------------------------------


@dataclass(frozen=True)
class FailureRow:
    j: int  # indices into the cut points
    k: int
    m: int  # an exponent that leaves the language
    outcomes: tuple  # (exponent, member?) for every exponent tried


@dataclass(frozen=True)
class PumpCertificate:
    predicate: str
    alphabet: Alphabet
    variant: str
    n_bound: int
    word: tuple
    positions: tuple
    exponents: tuple
    rows: tuple
    template: str = ""

    def __bool__(self):
        return True

    def factor(self, row: FailureRow):
        i, k = self.positions[row.j], self.positions[row.k]
        return self.word[:i], self.word[i:k], self.word[k:]


@dataclass(frozen=True)
class NoRefutation:
    status: str  # NO_REFUTATION or INCONCLUSIVE
    words_checked: int
    queries: int
    note: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return self.status + (f" ({self.note})" if self.note else "")


def cut_points(variant: str, n: int, n_bound: int) -> tuple:
    """The fixed cut sequence of a corollary variant for a word of length ``n``."""
    if variant == "simple":
        return tuple(range(n + 1))
    if variant == "prefix_bounded":
        return tuple(range(n_bound + 1))
    if variant == "suffix_bounded":
        return tuple(range(n - n_bound, n + 1))
    raise ContractError(f"variant {variant!r} has no fixed cut sequence")


def position_templates(n: int, n_bound: int):
    """Candidate cut sequences for the generalized variant: evenly spaced blocks.

    Yields ``(label, positions)`` for every start and step with all
    ``n_bound + 1`` points inside ``0..n``; step 1 gives contiguous blocks.
    This is a heuristic family, not all subsets.
    """
    for step in range(1, n // max(n_bound, 1) + 1):
        for start in range(0, n - step * n_bound + 1):
            yield f"spread(start={start}, step={step})", tuple(start + step * t for t in range(n_bound + 1))


class _Budget:
    def __init__(self, pred: Predicate, limit: int):
        self.pred = pred
        self.limit = limit
        self.used = 0
        self.cache = {}

    def __call__(self, w) -> bool:
        hit = self.cache.get(w)
        if hit is None:
            self.used += 1
            if self.used > self.limit:
                raise ResourceError(f"membership budget of {self.limit} queries exhausted")
            hit = self.cache[w] = self.pred(w)
        return hit


def _all_pairs_fail(member, w, positions, exponents):
    """Rows for every pair, or None as soon as some pair pumps through all exponents."""
    rows = []
    for j, k in itertools.combinations(range(len(positions)), 2):
        i, l = positions[j], positions[k]
        u1, u2, u3 = w[:i], w[i:l], w[l:]
        bad = None
        for m in exponents:
            if not member(pumped(u1, u2, u3, m)):
                bad = m
                break
        if bad is None:
            return None
        rows.append((j, k, bad))
    return rows


def certify(membership, word, variant: str, n_bound: int, positions=None, exponents=DEFAULT_EXPONENTS,
            alphabet=None) -> PumpCertificate | None:
    """Build the certificate for one word (and cut sequence), or None if some factor pumps."""
    pred = as_predicate(membership, alphabet)
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r} ({'|'.join(VARIANTS)})")
    w = tuple(word)
    if not pred(w):
        raise ContractError("the word is not in the language")
    if variant == "generalized":
        if positions is None:
            raise ContractError("the generalized variant needs explicit cut points")
        positions = _check_positions(positions, len(w))
        if len(positions) != n_bound + 1:
            raise ContractError(f"the generalized variant uses exactly {n_bound + 1} cut points")
    else:
        if len(w) < n_bound:
            raise ContractError(f"the word must have length at least {n_bound}")
        positions = cut_points(variant, len(w), n_bound)
    return _certificate(pred, w, variant, n_bound, positions, tuple(exponents), pred, "")


def _certificate(pred, w, variant, n_bound, positions, exponents, member, template):
    failing = _all_pairs_fail(member, w, positions, exponents)
    if failing is None:
        return None
    rows = []
    for j, k, m in failing:
        i, l = positions[j], positions[k]
        outcomes = tuple((e, member(pumped(w[:i], w[i:l], w[l:], e))) for e in exponents)
        rows.append(FailureRow(j, k, m, outcomes))
    return PumpCertificate(pred.name, pred.alphabet, variant, n_bound, w, tuple(positions), exponents, tuple(rows), template)


def refute_rationality(membership, variant: str = "simple", n_bound: int = 4, search_len: int = 8,
                       exponents=DEFAULT_EXPONENTS, budget: int = 2_000_000, alphabet=None):
    """Search for a word (and cut sequence) on which every admissible factor fails to pump.

    Words are tried in shortlex order from length ``n_bound`` up to
    ``n_bound + search_len``.  Returns a :class:`PumpCertificate`, or a
    :class:`NoRefutation` whose status is ``"no refutation found"`` when the
    search space was exhausted and ``"inconclusive"`` when the query
    budget ran out first.
    """
    pred = as_predicate(membership, alphabet)
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r} ({'|'.join(VARIANTS)})")
    if n_bound < 1:
        raise InputError("n_bound must be positive")
    exponents = tuple(exponents)
    member = _Budget(pred, budget)
    checked = 0
    note = "cut points searched over evenly spaced templates only" if variant == "generalized" else ""
    try:
        for n in range(n_bound, n_bound + search_len + 1):
            for w in words_of_length(pred.alphabet, n):
                if not member(w):
                    continue
                checked += 1
                if variant == "generalized":
                    candidates = position_templates(n, n_bound)
                else:
                    candidates = [("", cut_points(variant, n, n_bound))]
                for label, positions in candidates:
                    cert = _certificate(pred, w, variant, n_bound, positions, exponents, member, label)
                    if cert is not None:
                        return cert
    except ResourceError:
        return NoRefutation(INCONCLUSIVE, checked, member.used, note)
    return NoRefutation(NO_REFUTATION, checked, member.used, note)


# -- independent replay -----------------------------------------------------------------


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    problems: tuple = ()

    def __bool__(self):
        return self.ok


def check_certificate(cert: PumpCertificate, membership=None) -> CertificateCheck:
    """Replay a certificate against the predicate from scratch.

    Checks the word is in the language and long enough, the cut points have
    the shape the variant prescribes, every pair of cut points has a row,
    and every recorded outcome is what the predicate says now.
    """
    pred = as_predicate(membership if membership is not None else cert.predicate, cert.alphabet)
    problems = []
    w = tuple(cert.word)
    n = len(w)
    if cert.variant not in VARIANTS:
        problems.append(f"unknown variant {cert.variant!r}")
    if not pred(w):
        problems.append("the word is not in the language")
    pos = tuple(cert.positions)
    if any(a >= b for a, b in zip(pos, pos[1:])) or not pos or pos[0] < 0 or pos[-1] > n:
        problems.append("cut points are not strictly increasing within the word")
    if cert.variant == "generalized":
        if len(pos) != cert.n_bound + 1:
            problems.append(f"expected {cert.n_bound + 1} cut points, got {len(pos)}")
    elif cert.variant in VARIANTS:
        if n < cert.n_bound:
            problems.append(f"word shorter than n_bound={cert.n_bound}")
        elif pos != cut_points(cert.variant, n, cert.n_bound):
            problems.append(f"cut points do not match the {cert.variant} variant")
    need = {(j, k) for j in range(len(pos)) for k in range(j + 1, len(pos))}
    have = set()
    for row in cert.rows:
        if not (0 <= row.j < row.k < len(pos)):
            problems.append(f"row ({row.j},{row.k}) is out of range")
            continue
        have.add((row.j, row.k))
        u1, u2, u3 = w[: pos[row.j]], w[pos[row.j] : pos[row.k]], w[pos[row.k] :]
        if pred(pumped(u1, u2, u3, row.m)):
            problems.append(f"row ({row.j},{row.k}): exponent {row.m} stays in the language")
        for e, recorded in row.outcomes:
            if pred(pumped(u1, u2, u3, e)) != recorded:
                problems.append(f"row ({row.j},{row.k}): outcome for exponent {e} does not replay")
    missing = need - have
    if missing:
        problems.append(f"{len(missing)} pair(s) of cut points have no row, e.g. {min(missing)}")
    return CertificateCheck(not problems, tuple(problems))
