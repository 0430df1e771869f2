import io
import json

import pytest

from rational_kit import cli, fixtures
from rational_kit.automata import Alphabet
from rational_kit.formats import read_automaton, read_certificate, read_formula, read_monoid, write_automaton
from rational_kit.ops import decide_equivalence
from rational_kit.regex import compile_regex, parse_regex

AB = Alphabet(("a", "b"))


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.run([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def put(name, content):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else write_automaton(content))
        return str(path)

    return put


# -- automata --------------------------------------------------------------------------------


def test_equivalence_of_the_nfa_and_dfa_for_contains_ab(files):
    nfa = files("nfa.aut", fixtures.contains_ab_nfa())
    dfa = files("dfa.aut", fixtures.contains_ab_dfa())
    assert run("eq", nfa, dfa)[0] == 0
    code, out = run("eq", nfa, files("other.aut", fixtures.bstar_astar()))
    assert code == 1 and "counterexample" not in out and "only in the" in out


def test_enumerating_the_coffee_machine(files):
    code, out = run("enum", files("coffee.aut", fixtures.coffee_machine()), "--maxlen", 5)
    assert code == 0
    assert len(out.splitlines()) == 27


def test_min_reports_classes(files):
    code, out = run("min", files("six.aut", fixtures.six_state_redundant()), "--algorithm", "pair_marking")
    assert code == 0
    assert "# classes: {1,2,3} {4,5} {6}" in out
    assert read_automaton(out).num_states == 3


def test_empty_exit_codes(files):
    code, out = run("empty", files("ab.aut", fixtures.contains_ab_dfa()))
    assert code == 1 and out.strip() == "not empty: accepts ab"
    nothing = files("none.aut", "alphabet: a\nstates: 1\ninitial: 0\nfinal:\n0 a 0\n")
    assert run("empty", nothing) == (0, "empty\n")


def test_pipeline_through_stdin(files, monkeypatch):
    _, complement = run("complement", files("ab.aut", fixtures.contains_ab_nfa()))
    code, out = run("complement", "-", stdin=complement, monkeypatch=monkeypatch)
    assert code == 0
    assert decide_equivalence(read_automaton(out), fixtures.contains_ab_dfa())


def test_alphabet_mismatch_needs_the_flag(files):
    a = files("a.aut", "alphabet: a\nstates: 1\ninitial: 0\nfinal: 0\n0 a 0\n")
    b = files("b.aut", "alphabet: b\nstates: 1\ninitial: 0\nfinal: 0\n0 b 0\n")
    assert run("product", a, b)[0] == 2
    code, out = run("product", a, b, "--align-alphabets")
    assert code == 0
    assert read_automaton(out).alphabet.symbols == ("a", "b")


def test_json_output(files):
    code, out = run("det", files("nfa.aut", fixtures.contains_ab_nfa()), "--json")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "dfa" and data["alphabet"] == ["a", "b"]


# -- errors and caps ---------------------------------------------------------------------------


def test_bad_input_exits_2_with_a_line_number(files, capsys):
    bad = files("bad.aut", "alphabet: a\nstates: 2\ninitial: 0\nfinal: 1\n0 z 1\n")
    assert run("trim", bad)[0] == 2
    assert "line 5" in capsys.readouterr().err


def test_missing_file_and_unknown_command_exit_2(capsys):
    assert run("trim", "/nonexistent.aut")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("--help")[0] == 0
    capsys.readouterr()


def test_resource_cap_exits_3(files, capsys):
    code, _ = run("det", files("far.aut", fixtures.a_at_distance(10)), "--max-states", 50)
    assert code == 3
    assert "error:" in capsys.readouterr().err


# -- expressions and logic ---------------------------------------------------------------------------


def test_regex_compile_and_extract(files):
    code, out = run("regex", "compile", "(a|b)*ab(a|b)*")
    assert code == 0
    aut = files("rx.aut", out)
    code, expr = run("regex", "extract", aut, "--simplify")
    e = compile_regex(parse_regex(expr.strip(), alphabet=AB), AB)
    assert decide_equivalence(e, fixtures.contains_ab_dfa())


def test_mso_commands(files):
    starts = files("starts.mso", "alphabet: a b\nex1 x.(all1 y. !(y<x) & 'a'(x))\n")
    assert run("mso", "eval", starts, "ab")[0] == 0
    assert run("mso", "eval", starts, "ba")[0] == 1
    assert run("mso", "sat", starts) == (0, "satisfiable: a\n")
    code, out = run("mso", "valid", starts)
    assert code == 1 and out.strip() == "not valid: fails on eps"
    code, out = run("mso", "compile", starts)
    assert code == 0 and read_automaton(out).num_states == 3


def test_mso_eval_with_free_variables(files):
    phi = files("open.mso", "alphabet: a b\nx<y & X(y)\n")
    assert run("mso", "eval", phi, "aab", "--assign", "x=0", "--assign", "y=2", "--assign", "X=1,2")[0] == 0
    assert run("mso", "eval", phi, "aab", "--assign", "x=2", "--assign", "y=0", "--assign", "X=0")[0] == 1


def test_mso_from_dfa_round_trip(files):
    code, out = run("mso", "from-dfa", files("ab.aut", fixtures.ab_star_minimal()))
    assert code == 0
    _, alphabet = read_formula(out)
    code, back = run("mso", "compile", files("back.mso", out))
    assert decide_equivalence(read_automaton(back), fixtures.ab_star_minimal())


def test_fo_definability_names_the_group_witness(files):
    even = files(
        "even.mso",
        "alphabet: a b\n"
        "ex2 X.((all1 x. all1 y. (S(x,y) -> (X(x) <-> !X(y))))"
        " & (all1 x. ((all1 y. !(y<x)) -> X(x))) & (all1 x. ((all1 y. !(x<y)) -> !X(x))))\n",
    )
    code, out = run("fo-definable", even)
    assert code == 1
    assert "the element a generates the nontrivial group" in out
    assert set(out.strip().rsplit("{", 1)[1].rstrip("}").split(", ")) == {"1", "a"}
    assert run("fo-definable", "(ab)*", "--alphabet", "a b")[0] == 0


def test_starfree_commands(files, capsys):
    code, out = run("starfree", "extract", "(ab)*", "--alphabet", "a b", "--trace")
    assert code == 0
    e = compile_regex(parse_regex(out.strip(), dialect="star-free", alphabet=AB), AB)
    assert decide_equivalence(e, fixtures.ab_star_minimal())
    assert capsys.readouterr().err.startswith("split:")
    code, out = run("starfree", "to-fo", "a~0", "--alphabet", "a b")
    assert code == 0 and read_formula(out)[1] == AB
    assert run("starfree", "extract", "(aa)*", "--alphabet", "a")[0] == 2


# -- monoids -----------------------------------------------------------------------------------------


def test_monoid_commands(files):
    code, out = run("monoid", "of", files("group.aut", fixtures.ab_star_with_group()))
    assert code == 0 and read_monoid(out).size == 7
    mon = files("group.mon", out)
    code, out = run("monoid", "aperiodic", mon)
    assert code == 1 and out.startswith("not aperiodic")
    code, out = run("monoid", "syntactic", "(ab)*", "--alphabet", "a b")
    assert code == 0 and read_monoid(out).size == 6
    syn = files("syn.mon", out)
    assert run("monoid", "aperiodic", syn)[0] == 0
    assert run("monoid", "iso", syn, syn)[0] == 0
    assert run("monoid", "iso", syn, mon)[0] == 1


def test_monoid_recognize_and_divide(files):
    mon = files("z2.mon", "size: 2\nidentity: 0\ngen: a -> 1\ngen: b -> 1\n0 1\n1 0\n")
    code, out = run("monoid", "recognize", mon, "--images", "a=1 b=1", "--accept", "0")
    assert code == 0
    assert decide_equivalence(read_automaton(out), compile_regex(parse_regex("((a|b)(a|b))*"), AB))
    code, out = run("monoid", "divide", mon, "--images", "a=1 b=1", "--accept", "0", "--json")
    assert code == 0 and json.loads(out)["target_size"] == 2


# -- pumping -------------------------------------------------------------------------------------------


def test_pump_refute_then_verify(tmp_path):
    cert = tmp_path / "anbn.cert"
    code, out = run("pump", "refute", "--predicate", "anbn", "--n-bound", 4, "--out", cert)
    assert code == 0
    assert read_certificate(cert.read_text()) == read_certificate(out)
    assert run("pump", "verify", cert)[0] == 0
    # pumping a factor ab keeps the counts equal, so the certificate is specific to anbn
    assert run("pump", "verify", cert, "--predicate", "equal-count")[0] == 1
    rational = tmp_path / "ab.aut"
    rational.write_text(write_automaton(fixtures.contains_ab_dfa()))
    code, out = run("pump", "verify", cert, "--automaton-predicate", rational)
    assert code == 1 and "does not replay" in out


def test_pump_refute_finds_nothing_on_a_rational_language(files):
    aut = files("ab.aut", fixtures.contains_ab_dfa())
    code, out = run("pump", "refute", "--automaton-predicate", aut, "--n-bound", 3, "--search-len", 6)
    assert code == 1


def test_pump_refute_with_a_counter_program(files):
    program = files(
        "anbn.cnt",
        "alphabet: a b\na: test seen = 0; inc n\nb: inc seen; dec n; test n >= 0\nend: test n = 0; accept\n",
    )
    assert run("pump", "refute", "--program", program, "--n-bound", 3)[0] == 0


def test_pump_split(files):
    aut = files("ab.aut", fixtures.contains_ab_dfa())
    code, out = run("pump", "split", aut, "aabab")
    assert code == 0 and out.startswith("j=")
    assert run("pump", "split", aut, "bb")[0] == 2


# -- generation -----------------------------------------------------------------------------------------


@pytest.mark.parametrize("kind", ["dfa", "nfa", "regex", "mso"])
def test_random_is_deterministic_per_seed(kind):
    first = run("random", kind, "--seed", 7)
    assert first[0] == 0
    assert run("random", kind, "--seed", 7) == first
    outputs = {run("random", kind, "--seed", s)[1] for s in range(8)}
    assert len(outputs) > 1
