"""From formulas on words to automata, and back.

Run from the repository root:  python3 demos/02_logic.py
"""

from pathlib import Path

from rational_kit.automata import Alphabet, enumerate_language
from rational_kit.formats import read_formula
from rational_kit.logic import (
    TrackAlphabet,
    Valuation,
    compile_formula,
    decide_mso,
    dfa_to_mso,
    eval_formula,
    fragment,
    parse_formula,
)
from rational_kit.ops import decide_equivalence

DATA = Path(__file__).parent / "data"
AB = Alphabet(("a", "b"))


def show(words):
    return " ".join("".join(w) or "eps" for w in words)


# Even length is not first-order, but one set variable is enough.
even, alphabet = read_formula((DATA / "even_length.mso").read_text())
print("even_length.mso uses second-order quantifiers:", not fragment(even).fo_order)
d = compile_formula(even, alphabet)
print(f"compiles to a {d.num_states}-state DFA accepting: {show(enumerate_language(d, 4))}")
print()

# Free variables become extra tracks: each letter carries one bit per variable.
phi = parse_formula("x<y & 'a'(x) & 'b'(y)")
print("open formula:", "x<y & 'a'(x) & 'b'(y)")
print("on aab with x=0, y=2:", eval_formula("aab", Valuation({"x": 0, "y": 2}), phi))
tracked = compile_formula(phi, AB, track_order=("x", "y"))
tracks = tracked.alphabet
assert isinstance(tracks, TrackAlphabet)
word = tracks.encode_valuation(tuple("aab"), Valuation({"x": 0, "y": 2}))
print(f"track alphabet has {len(tracks.symbols)} letters; aab with x=0, y=2 encodes as {show([word])}")
print("the compiled automaton accepts it:", tracked.step(tracked.initial, word) in tracked.finals)
print()

# Validity and satisfiability come with a shortest witness.
print("is 'some letter is a' valid?", bool(decide_mso(parse_formula("ex1 x. 'a'(x)"), AB, "valid")))
print("  fails on:", show([decide_mso(parse_formula("ex1 x. 'a'(x)"), AB, "valid").word]))
sat = decide_mso(parse_formula("ex1 x. ex1 y. (S(x,y) & 'b'(x) & 'a'(y))"), AB, "satisfiable")
print("shortest word with a factor ba:", show([sat.word]))
print()

# Any DFA becomes a sentence: one set variable per state describes the run.
back = dfa_to_mso(d)
print(f"sentence for the even-length DFA has {len(str(back))} characters")
print("and compiles back to the same language:", bool(decide_equivalence(compile_formula(back, AB), d)))
