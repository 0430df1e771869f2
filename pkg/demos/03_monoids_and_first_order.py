"""Which rational languages are first-order definable?

A language can be described in first-order logic over < exactly when its
syntactic monoid has no nontrivial group.  This demo computes monoids,
finds group witnesses, and for aperiodic languages builds a star-free
expression and a first-order sentence.

Run from the repository root:  python3 demos/03_monoids_and_first_order.py
"""

from pathlib import Path

from rational_kit.automata import Alphabet
from rational_kit.formats import read_automaton, read_formula, read_monoid
from rational_kit.logic import compile_formula, fragment
from rational_kit.monoid import division_witness, is_aperiodic, monoid_isomorphic, syntactic_monoid, transition_monoid
from rational_kit.ops import decide_equivalence
from rational_kit.regex import parse_regex, regex_size, to_text
from rational_kit.starfree import extract_starfree, is_fo_definable, starfree_to_fo

DATA = Path(__file__).parent / "data"
AB = Alphabet(("a", "b"))

# The transition monoid depends on the automaton, the syntactic monoid only on the language.
group_dfa = read_automaton((DATA / "ab_star_group.aut").read_text())
tm = transition_monoid(group_dfa)
print(f"ab_star_group.aut: transition monoid has {tm.size} elements")
assert monoid_isomorphic(tm, read_monoid((DATA / "ab_star_group.mon").read_text()))
ap = is_aperiodic(tm)
print(f"  not aperiodic: {tm.name(ap.element)} cycles through {{{', '.join(tm.name(c) for c in ap.cycle)}}}")

syn = syntactic_monoid(group_dfa)
print(f"syntactic monoid of the same language has {syn.monoid.size} elements:",
      ", ".join(syn.monoid.name(i) for i in range(syn.monoid.size)))
print("  aperiodic:", bool(is_aperiodic(syn.monoid)))

# The bigger monoid still recognizes the language, so the syntactic one divides it.
fixes_start = [i for i in range(tm.size) if tm.maps[i][group_dfa.initial] == group_dfa.initial]
w = division_witness(tm, tm.generators, fixes_start, AB)
print(f"  division: a submonoid of {len(w.elements)} elements maps onto the {w.target.size}-element syntactic monoid")
print()

# Even length needs a group, so no first-order sentence defines it.
even, alphabet = read_formula((DATA / "even_length.mso").read_text())
verdict = is_fo_definable(compile_formula(even, alphabet))
print("even length FO-definable?", bool(verdict), f"(witness {verdict.witness}, group {{{', '.join(verdict.cycle)}}})")
print()

# (ab)* is aperiodic, so it has a star-free expression and a first-order sentence.
result = extract_starfree(syntactic_monoid(parse_regex("(ab)*"), AB).dfa)
print(f"star-free expression for (ab)* ({regex_size(result.expression)} nodes):")
print("  " + to_text(result.expression))
print("derivation:")
for line in result.derivation.render().splitlines()[:6]:
    print("  " + line)

sentence = starfree_to_fo(result.expression)
print("its translation stays first-order:", fragment(sentence).fo_order)
described, _ = read_formula((DATA / "no_aa_no_bb.mso").read_text())
print("and matches the hand-written sentence in no_aa_no_bb.mso:",
      bool(decide_equivalence(compile_formula(sentence, AB), compile_formula(described, AB))))
