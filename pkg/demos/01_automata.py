"""Automata basics: determinize, minimize, compare and enumerate.

Run from the repository root:  python3 demos/01_automata.py
"""

from pathlib import Path

from rational_kit.automata import complete, determinize, enumerate_language
from rational_kit.formats import read_automaton, write_automaton
from rational_kit.minimize import equivalent_states, minimize
from rational_kit.ops import complement_language, decide_equivalence, product

DATA = Path(__file__).parent / "data"


def load(name):
    return read_automaton((DATA / name).read_text())


# An NFA for "contains ab" guesses where the ab starts.
nfa = load("contains_ab_nfa.aut")
print("NFA for words containing ab:")
print(write_automaton(nfa))

# The subset construction only builds the subsets it can reach.
dfa = determinize(nfa).dfa
print(f"subset construction reaches {dfa.num_states} states")
print("same language as the hand-written DFA:", bool(decide_equivalence(dfa, load("contains_ab_dfa.aut"))))

# A language and its complement never share a word.
both = product(complete(dfa), complement_language(dfa), "intersect")
print("words in both a language and its complement:", enumerate_language(both, 6))
print()

# Minimization merges states that no suffix tells apart.
six = load("six_state.aut")
m = minimize(six, "pair_marking")
print("six-state automaton, classes after pair marking:")
for block in m.partition.blocks:
    print("  {" + ", ".join(six.state_name(q) for q in block) + "}")
print(f"passes until stable: {m.passes}")

# When two states differ, the shortest separating suffix says why.
eight = load("aaa_eight.aut")
diff = equivalent_states(eight, "e", "aa")
print("states e and aa in the eight-state aaa automaton separated by:", "".join(diff.word))
print(f"eight states minimize to {minimize(eight).dfa.num_states}")
print()

# The coffee machine takes coins worth 5 (f), 10 (t) and 20 (w) cents
# and accepts once the total first reaches 25.
coffee = load("coffee.aut")
words = enumerate_language(coffee, 5)
print(f"coffee machine accepts {len(words)} words of length at most 5, shortest first:")
print("  " + " ".join("".join(w) or "eps" for w in words[:12]) + " ...")
