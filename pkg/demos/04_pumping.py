"""Pumping: loops in accepted words, and certificates that a language is not rational.

Run from the repository root:  python3 demos/04_pumping.py
"""

from pathlib import Path

from rational_kit.formats import read_automaton, read_certificate, write_certificate
from rational_kit.pumping import (
    automaton_predicate,
    check_certificate,
    parse_counter_program,
    pump_split,
    pumped,
    refute_rationality,
)

DATA = Path(__file__).parent / "data"


def show(w):
    return "".join(w) or "eps"


# In a 3-state automaton, any 3 letters of an accepted word contain a loop.
dfa = read_automaton((DATA / "contains_ab_dfa.aut").read_text())
s = pump_split(dfa, "babab")
print(f"babab = {show(s.u1)} ({show(s.u2)}) {show(s.u3)}")
print("  pumped 0..4 times:", ", ".join(show(pumped(s.u1, s.u2, s.u3, m)) for m in range(5)))
print()

# a^n b^n fails every factorization, and the certificate lists each failure.
cert = refute_rationality("anbn", "simple", 4)
print(f"a^n b^n with N=4: refuted by {show(cert.word)}, cut points {cert.positions}")
for row in cert.rows[:4]:
    print(f"  cut {row.j}..{row.k}: pumping {row.m} times leaves the language")
print(f"  ... {len(cert.rows)} rows in all")

# Certificates are plain text and replay without trusting the search.
text = write_certificate(cert)
print("replays from text:", bool(check_certificate(read_certificate(text))))
print("but not against an automaton:", bool(check_certificate(cert, automaton_predicate(dfa))))
print()

# Counter programs define non-rational predicates without writing Python.
program = parse_counter_program((DATA / "anbn.cnt").read_text(), "anbn.cnt")
print("anbn.cnt on aabb, aab:", program("aabb"), program("aab"))
print("refuted with N=3 on", show(refute_rationality(program, "simple", 3).word))
print()

# Some languages pass the simple test but fail a stronger one.
print("abcd-mixed, simple, N=2:", refute_rationality("abcd-mixed", "simple", 2, search_len=6).status)
strong = refute_rationality("abcd-mixed", "generalized", 2, search_len=6)
print(f"abcd-mixed, generalized, N=2: refuted by {show(strong.word)} ({strong.template})")

# A rational language is never refuted, whatever the budget.
print("contains ab:", refute_rationality(automaton_predicate(dfa), "prefix_bounded", 3).status)
