"""Command-line front end: ``rational-kit <command> ...``.

Automata, formulas, monoids and certificates are read from and written to
the text formats of :mod:`rational_kit.formats`, so commands compose
through pipes (``-`` reads standard input).  Exit codes: 0 success or
true, 1 false (not equivalent, not empty, not aperiodic, no certificate,
...), 2 bad input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats, logic, monoid, ops, pumping, regex, starfree
from .automata import (
    EPS_TOKEN,
    Alphabet,
    Dfa,
    as_nfa,
    complete,
    determinize,
    enumerate_language,
    is_empty,
    subset_automaton,
    to_dfa,
    trim,
    widen,
)
from .config import DEFAULT_CAPS
from .corpus import random_dfa, random_nfa, random_regex, random_sentence
from .errors import InputError, RationalKitError, ResourceError
from .minimize import ALGORITHMS, minimize


class Job:
    """Options shared by every command: caps, alphabet coercion, output format."""

    def __init__(self, args):
        self.json = args.json
        self.align = args.align_alphabets
        self.seed = args.seed
        self.caps = DEFAULT_CAPS.with_(
            determinize_states=args.max_states,
            monoid_size=args.max_monoid,
            starfree_nodes=args.max_starfree_nodes,
            enumerate_length=args.max_enum_length,
        )
        self.out = sys.stdout

    def emit(self, text: str, data):
        if self.json:
            self.out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        elif text:
            self.out.write(text if text.endswith("\n") else text + "\n")


# -- input helpers ---------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _located(path: str, parse):
    try:
        return parse(_read(path))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_automaton(path: str):
    return _located(path, formats.read_automaton)


def _alphabet_arg(text):
    return Alphabet.of(text) if text else None


def load_language(job: Job, source: str, alphabet=None):
    """A complete DFA from a ``.aut`` file, a ``.mso`` file or an inline expression."""
    if source.endswith(".aut") or source == "-":
        return to_dfa(load_automaton(source), cap=job.caps.determinize_states)
    if source.endswith(".mso"):
        phi, alph = _located(source, formats.read_formula)
        return logic.compile_formula(phi, alph, cap=job.caps.determinize_states)
    e = regex.parse_regex(source, alphabet=alphabet)
    return to_dfa(regex.compile_regex(e, alphabet, cap=job.caps.determinize_states), cap=job.caps.determinize_states)


def _align(job: Job, a, b):
    if a.alphabet.symbols == b.alphabet.symbols:
        return a, b
    if not job.align:
        raise InputError(
            f"alphabets differ ({' '.join(a.alphabet)} vs {' '.join(b.alphabet)}); pass --align-alphabets to use their union"
        )
    union = a.alphabet.union(b.alphabet)
    return widen(a, union), widen(b, union)


def _word(alphabet: Alphabet, text: str):
    return alphabet.word(text)


def _show(alphabet: Alphabet, w) -> str:
    return alphabet.show(w) if w else EPS_TOKEN


def _ints(text: str, what: str) -> list:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"{what} must be integers, got {text!r}") from None


# -- JSON mirrors ------------------------------------------------------------------------


def automaton_json(a) -> dict:
    nfa = as_nfa(a)
    out = {
        "kind": "dfa" if isinstance(a, Dfa) else "nfa",
        "alphabet": list(nfa.alphabet),
        "states": nfa.num_states,
    }
    if nfa.names is not None:
        out["names"] = list(nfa.names)
    out["initial"] = sorted(nfa.initials)
    out["final"] = sorted(nfa.finals)
    out["transitions"] = [[p, s, q] for p, s, q in nfa.triples()]
    return out


def monoid_json(m) -> dict:
    out = {"size": m.size, "identity": m.identity}
    if m.names is not None:
        out["names"] = list(m.names)
    out["generators"] = {a: int(g) for a, g in m.generators.items()}
    out["table"] = m.table.tolist()
    return out


def certificate_json(c: pumping.PumpCertificate) -> dict:
    return {
        "predicate": c.predicate,
        "alphabet": list(c.alphabet),
        "variant": c.variant,
        "n_bound": c.n_bound,
        "word": _show(c.alphabet, c.word),
        "positions": list(c.positions),
        "exponents": list(c.exponents),
        "template": c.template,
        "rows": [{"j": r.j, "k": r.k, "m": r.m, "outcomes": {str(e): v for e, v in r.outcomes}} for r in c.rows],
    }


def _emit_automaton(job: Job, a, comment: str = ""):
    text = formats.write_automaton(a)
    if comment:
        text = "".join(f"# {line}\n" for line in comment.splitlines()) + text
    job.emit(text, automaton_json(a))
    return 0


# -- automaton commands --------------------------------------------------------------------


def cmd_det(job, args):
    a = load_automaton(args.automaton)
    if args.full:
        return _emit_automaton(job, subset_automaton(a, cap=args.subset_cap or job.caps.subset_states))
    return _emit_automaton(job, determinize(a, prune=args.prune, cap=job.caps.determinize_states).dfa)


def cmd_min(job, args):
    d = complete(to_dfa(load_automaton(args.automaton), cap=job.caps.determinize_states))
    result = minimize(d, args.algorithm)
    classes = " ".join("{" + ",".join(d.state_name(q) for q in block) + "}" for block in result.partition.blocks)
    if job.json:
        data = automaton_json(result.dfa)
        data["classes"] = [[d.state_name(q) for q in block] for block in result.partition.blocks]
        data["passes"] = result.passes
        job.emit("", data)
        return 0
    return _emit_automaton(job, result.dfa, f"classes: {classes}\npasses: {result.passes}")


def cmd_trim(job, args):
    return _emit_automaton(job, trim(load_automaton(args.automaton)).nfa)


def cmd_complete(job, args):
    return _emit_automaton(job, complete(load_automaton(args.automaton)))


def cmd_complement(job, args):
    return _emit_automaton(job, ops.complement_language(load_automaton(args.automaton), cap=job.caps.determinize_states))


def cmd_product(job, args):
    a, b = _align(job, load_automaton(args.left), load_automaton(args.right))
    if args.mode == "union":
        a, b = complete(a), complete(b)
    return _emit_automaton(job, ops.product(a, b, args.mode))


def cmd_concat(job, args):
    a, b = _align(job, load_automaton(args.left), load_automaton(args.right))
    return _emit_automaton(job, ops.concat(a, b))


def cmd_star(job, args):
    return _emit_automaton(job, ops.star(load_automaton(args.automaton)))


def _morphism(text: str):
    if text.endswith(".mor"):
        return _located(text, formats.read_morphism)
    return ops.Morphism.parse(text)


def cmd_morph(job, args):
    a = load_automaton(args.automaton)
    phi = _morphism(args.map)
    if phi.source.symbols != a.alphabet.symbols:
        a = widen(a, phi.source) if job.align else a
    return _emit_automaton(job, ops.morphic_image(a, phi))


def cmd_invmorph(job, args):
    a = load_automaton(args.automaton)
    phi = _morphism(args.map)
    if job.align and phi.target.symbols != a.alphabet.symbols:
        a = widen(a, a.alphabet.union(phi.target))
        phi = ops.Morphism(phi.source, a.alphabet, phi.images)
    return _emit_automaton(job, ops.inverse_morphic_image(a, phi))


def cmd_quotient(job, args):
    a, k = _align(job, load_automaton(args.automaton), load_automaton(args.by))
    return _emit_automaton(job, ops.quotient(a, k, args.side))


def cmd_closure(job, args):
    return _emit_automaton(job, ops.closure_unary(load_automaton(args.automaton), args.kind))


def cmd_shuffle(job, args):
    a, b = _align(job, load_automaton(args.left), load_automaton(args.right))
    return _emit_automaton(job, ops.shuffle(a, b))


def _decision(job, verdict: str, d: ops.Decision, alphabet):
    data = {"holds": d.holds}
    text = verdict if d.holds else f"not {verdict}"
    if not d.holds:
        data["counterexample"] = _show(alphabet, d.counterexample)
        data["side"] = d.side
        text += f": {data['counterexample']} is only in the {d.side} language"
    job.emit(text, data)
    return 0 if d.holds else 1


def cmd_eq(job, args):
    a, b = _align(job, load_automaton(args.left), load_automaton(args.right))
    return _decision(job, "equivalent", ops.decide_equivalence(a, b, cap=job.caps.determinize_states), a.alphabet)


def cmd_incl(job, args):
    a, b = _align(job, load_automaton(args.left), load_automaton(args.right))
    return _decision(job, "included", ops.decide_inclusion(a, b, cap=job.caps.determinize_states), a.alphabet)


def cmd_empty(job, args):
    a = load_automaton(args.automaton)
    e = is_empty(a)
    data = {"empty": e.empty}
    if e.empty:
        text = "empty"
    else:
        data["word"] = _show(a.alphabet, e.word)
        text = f"not empty: accepts {data['word']}"
    job.emit(text, data)
    return 0 if e.empty else 1


def cmd_enum(job, args):
    a = load_automaton(args.automaton)
    words = enumerate_language(a, args.maxlen, cap=job.caps.enumerate_length)
    shown = [_show(a.alphabet, w) for w in words]
    job.emit("\n".join(shown) + ("\n" if shown else ""), {"count": len(shown), "words": shown})
    return 0


# -- expressions ---------------------------------------------------------------------------


def _expression(args, dialect="extended"):
    alphabet = _alphabet_arg(args.alphabet)
    text = _read(args.file) if getattr(args, "file", None) else args.expression
    if text is None:
        raise InputError("give an expression or --file")
    return regex.parse_regex(text.strip(), dialect, alphabet), alphabet


def cmd_regex_compile(job, args):
    e, alphabet = _expression(args, args.dialect)
    stats = {}
    a = regex.compile_regex(e, alphabet, stats=stats, cap=job.caps.determinize_states)
    if job.json:
        data = automaton_json(a)
        data["constructions"] = stats
        job.emit("", data)
        return 0
    return _emit_automaton(job, a)


def cmd_regex_extract(job, args):
    a = load_automaton(args.automaton)
    e = regex.extract_regex(a)
    if args.simplify:
        e = regex.simplify(e)
    job.emit(regex.to_text(e), {"expression": regex.to_text(e), "size": regex.regex_size(e)})
    return 0


def cmd_regex_simplify(job, args):
    e, _ = _expression(args)
    s = regex.simplify(e)
    job.emit(regex.to_text(s), {"expression": regex.to_text(s), "size": regex.regex_size(s), "before": regex.regex_size(e)})
    return 0


# -- logic -----------------------------------------------------------------------------------


def _formula(path):
    return _located(path, formats.read_formula)


def cmd_mso_compile(job, args):
    phi, alphabet = _formula(args.formula)
    order = args.track_order.replace(",", " ").split() if args.track_order else None
    d = logic.compile_formula(phi, alphabet, track_order=order, cap=job.caps.determinize_states)
    tracks = logic.free_variables(phi) if order is None else tuple(order)
    return _emit_automaton(job, d, f"tracks: {' '.join(tracks) or '(none)'}")


def _valuation(assignments) -> logic.Valuation:
    fo, so = {}, {}
    for item in assignments or ():
        name, eq, value = item.partition("=")
        name = name.strip()
        if not eq or not name:
            raise InputError(f"expected VAR=VALUE, got {item!r}")
        if logic.is_first_order_name(name):
            vals = _ints(value, f"position of {name}")
            if len(vals) != 1:
                raise InputError(f"first-order variable {name} takes one position")
            fo[name] = vals[0]
        else:
            so[name] = frozenset(_ints(value, f"positions of {name}"))
    return logic.Valuation(fo, so)


def cmd_mso_eval(job, args):
    phi, alphabet = _formula(args.formula)
    u = _word(alphabet, args.word)
    holds = logic.eval_formula(u, _valuation(args.assign), phi, alphabet)
    job.emit("true" if holds else "false", {"holds": holds})
    return 0 if holds else 1


def _mso_decide(job, args, mode):
    phi, alphabet = _formula(args.formula)
    r = logic.decide_mso(phi, alphabet, mode, cap=job.caps.determinize_states)
    data = {"holds": r.holds}
    if mode == "valid":
        text = "valid" if r.holds else f"not valid: fails on {_show(alphabet, r.word)}"
    else:
        text = f"satisfiable: {_show(alphabet, r.word)}" if r.holds else "unsatisfiable"
    if r.word is not None:
        data["word"] = _show(alphabet, r.word)
    job.emit(text, data)
    return 0 if r.holds else 1


def cmd_mso_valid(job, args):
    return _mso_decide(job, args, "valid")


def cmd_mso_sat(job, args):
    return _mso_decide(job, args, "satisfiable")


def cmd_mso_from_dfa(job, args):
    d = complete(to_dfa(load_automaton(args.automaton), cap=job.caps.determinize_states))
    phi = logic.dfa_to_mso(d)
    job.emit(formats.write_formula(phi, d.alphabet), {"alphabet": list(d.alphabet), "formula": logic.to_text(phi)})
    return 0


# -- monoids -----------------------------------------------------------------------------------


def _monoid(path):
    if path.endswith(".mon"):
        return _located(path, formats.read_monoid)
    raise InputError(f"expected a .mon file, got {path!r}")


def _emit_monoid(job, m):
    job.emit(formats.write_monoid(m), monoid_json(m))
    return 0


def cmd_monoid_of(job, args):
    d = complete(to_dfa(load_automaton(args.automaton), cap=job.caps.determinize_states))
    return _emit_monoid(job, monoid.transition_monoid(d, cap=job.caps.monoid_size))


def cmd_monoid_syntactic(job, args):
    d = load_language(job, args.language, _alphabet_arg(args.alphabet))
    syn = monoid.syntactic_monoid(d, cap=job.caps.monoid_size)
    if job.json:
        data = monoid_json(syn.monoid)
        data["accepting"] = sorted(syn.accepting)
        job.emit("", data)
        return 0
    job.emit(formats.write_monoid(syn.monoid) + f"# accepting: {' '.join(map(str, sorted(syn.accepting)))}\n", None)
    return 0


def cmd_monoid_aperiodic(job, args):
    if args.source.endswith(".mon"):
        m = _monoid(args.source)
    else:
        d = complete(to_dfa(load_automaton(args.source), cap=job.caps.determinize_states))
        m = monoid.transition_monoid(d, cap=job.caps.monoid_size)
    ap = monoid.is_aperiodic(m)
    data = {"aperiodic": ap.aperiodic, "size": ap.size}
    if ap.aperiodic:
        text = f"aperiodic ({ap.size} elements)"
    else:
        data["element"] = m.name(ap.element)
        data["cycle"] = [m.name(c) for c in ap.cycle]
        text = f"not aperiodic: {m.name(ap.element)} generates the group {{{', '.join(data['cycle'])}}}"
    job.emit(text, data)
    return 0 if ap.aperiodic else 1


def _images(text: str) -> dict:
    out = {}
    for item in text.replace(",", " ").split():
        sym, eq, val = item.partition("=")
        if not eq:
            raise InputError(f"expected symbol=element, got {item!r}")
        out[sym] = _ints(val, f"image of {sym}")[0]
    return out


def cmd_monoid_recognize(job, args):
    m = _monoid(args.monoid)
    images = _images(args.images)
    return _emit_automaton(job, monoid.monoid_recognizes(m, images, _ints(args.accept, "accepting elements")))


def cmd_monoid_divide(job, args):
    m = _monoid(args.monoid)
    images = _images(args.images)
    w = monoid.division_witness(m, images, _ints(args.accept, "accepting elements"))
    pairs = {str(k): int(v) for k, v in w.images.items()}
    lines = [f"syntactic monoid of the recognized language has {w.target.size} elements and divides M"]
    lines.append("submonoid -> syntactic: " + " ".join(f"{m.name(k)}->{w.target.name(v)}" for k, v in w.images.items()))
    job.emit("\n".join(lines), {"target_size": w.target.size, "submonoid": list(map(int, w.elements)), "images": pairs})
    return 0


def cmd_monoid_iso(job, args):
    m1, m2 = _monoid(args.left), _monoid(args.right)
    r = monoid.monoid_isomorphic(m1, m2)
    data = {"isomorphic": r.isomorphic}
    text = "isomorphic" if r.isomorphic else "not isomorphic"
    if r.isomorphic:
        data["mapping"] = {str(k): v for k, v in r.mapping.items()}
        text += ": " + " ".join(f"{m1.name(k)}->{m2.name(v)}" for k, v in r.mapping.items())
    job.emit(text, data)
    return 0 if r.isomorphic else 1


# -- first-order definability and star-free expressions -----------------------------------------


def cmd_fo_definable(job, args):
    d = load_language(job, args.language, _alphabet_arg(args.alphabet))
    r = starfree.is_fo_definable(d, cap=job.caps.monoid_size)
    data = {"definable": r.definable, "monoid_size": r.monoid_size}
    if r.definable:
        text = f"FO-definable: the syntactic monoid ({r.monoid_size} elements) is aperiodic"
    else:
        data["witness"] = r.witness
        data["group"] = list(r.cycle)
        text = (
            f"not FO-definable: in the syntactic monoid ({r.monoid_size} elements) the element {r.witness} "
            f"generates the nontrivial group {{{', '.join(r.cycle)}}}"
        )
    job.emit(text, data)
    return 0 if r.definable else 1


def cmd_starfree_extract(job, args):
    d = load_language(job, args.language, _alphabet_arg(args.alphabet))
    try:
        r = starfree.extract_starfree(d, validate=not args.no_validate, cap=job.caps.starfree_nodes)
    except ResourceError as exc:
        if args.trace and exc.partial is not None:
            sys.stderr.write(exc.partial.render() + "\n")
        raise
    text = regex.to_text(r.expression)
    if args.trace:
        sys.stderr.write(r.derivation.render() + "\n")
    data = {"expression": text, "size": regex.regex_size(r.expression), "nodes": r.derivation.node_count}
    if args.trace:
        data["trace"] = r.derivation.render()
    job.emit(text, data)
    return 0


def cmd_starfree_to_fo(job, args):
    e, alphabet = _expression(args, "star-free")
    alphabet = alphabet or regex.infer_alphabet(e)
    phi = starfree.starfree_to_fo(e, reuse_variables=not args.fresh_variables)
    job.emit(formats.write_formula(phi, alphabet), {"alphabet": list(alphabet), "formula": logic.to_text(phi)})
    return 0


# -- pumping -----------------------------------------------------------------------------------------


def _predicate(args):
    if args.program:
        return _located(args.program, lambda t: pumping.parse_counter_program(t, name=f"program {args.program}"))
    if args.automaton_predicate:
        return pumping.automaton_predicate(load_automaton(args.automaton_predicate), f"automaton {args.automaton_predicate}")
    return pumping.as_predicate(args.predicate or "anbn")


def cmd_pump_split(job, args):
    a = load_automaton(args.automaton)
    w = _word(a.alphabet, args.word)
    positions = _ints(args.positions, "positions") if args.positions else None
    s = pumping.pump_split(a, w, positions)
    outcomes = {m: bool(pumping.automaton_predicate(a)(pumping.pumped(s.u1, s.u2, s.u3, m))) for m in range(args.check + 1)}
    show = lambda u: _show(a.alphabet, u)  # noqa: E731
    text = f"j={s.j} k={s.k} u1={show(s.u1)} u2={show(s.u2)} u3={show(s.u3)}\n"
    text += "pumped: " + " ".join(f"{m}:{'in' if v else 'out'}" for m, v in outcomes.items())
    data = {"j": s.j, "k": s.k, "u1": show(s.u1), "u2": show(s.u2), "u3": show(s.u3), "pumped": {str(m): v for m, v in outcomes.items()}}
    job.emit(text, data)
    return 0 if all(outcomes.values()) else 1


def cmd_pump_verify(job, args):
    cert = _located(args.certificate, formats.read_certificate)
    pred = _predicate(args) if (args.program or args.predicate or args.automaton_predicate) else pumping.as_predicate(cert.predicate)
    check = pumping.check_certificate(cert, pred)
    data = {"ok": check.ok, "problems": list(check.problems)}
    text = "certificate replays clean" if check.ok else "certificate does not replay:\n" + "\n".join(f"  {p}" for p in check.problems)
    job.emit(text, data)
    return 0 if check.ok else 1


def cmd_pump_refute(job, args):
    pred = _predicate(args)
    exps = tuple(_ints(args.exponents, "exponents"))
    r = pumping.refute_rationality(pred, args.variant, args.n_bound, args.search_len, exps, args.budget)
    if isinstance(r, pumping.PumpCertificate):
        text = formats.write_certificate(r)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        job.emit(text, certificate_json(r))
        return 0
    job.emit(str(r), {"status": r.status, "words_checked": r.words_checked, "queries": r.queries, "note": r.note})
    return 1


# -- corpus generation ----------------------------------------------------------------------------------


def cmd_random(job, args):
    seed = job.seed
    if args.kind == "dfa":
        return _emit_automaton(job, random_dfa(seed, args.states, args.alphabet))
    if args.kind == "nfa":
        return _emit_automaton(job, random_nfa(seed, args.states, args.alphabet))
    if args.kind == "regex":
        e = random_regex(seed, args.size, args.alphabet)
        job.emit(regex.to_text(e), {"expression": regex.to_text(e)})
        return 0
    phi = random_sentence(seed, args.size, args.alphabet)
    job.emit(formats.write_formula(phi, args.alphabet), {"alphabet": list(Alphabet.of(args.alphabet)), "formula": logic.to_text(phi)})
    return 0


# -- argument parsing ----------------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--json", action="store_true", default=S, help="machine-readable output")
    p.add_argument("--align-alphabets", action="store_true", default=S, help="widen both operands to the union alphabet")
    p.add_argument("--seed", type=int, default=S, help="seed for corpus generation")
    p.add_argument("--max-states", type=int, default=S, metavar="N", help="determinization state cap")
    p.add_argument("--max-monoid", type=int, default=S, metavar="N", help="monoid size cap")
    p.add_argument("--max-starfree-nodes", type=int, default=S, metavar="N", help="star-free extraction node cap")
    p.add_argument("--max-enum-length", type=int, default=S, metavar="N", help="enumeration length cap")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="rational-kit", description=__doc__.splitlines()[0], parents=[common])
    parser.set_defaults(
        json=False,
        align_alphabets=False,
        seed=0,
        max_states=DEFAULT_CAPS.determinize_states,
        max_monoid=DEFAULT_CAPS.monoid_size,
        max_starfree_nodes=DEFAULT_CAPS.starfree_nodes,
        max_enum_length=DEFAULT_CAPS.enumerate_length,
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def cmd(name, func, help, parent=sub):
        p = parent.add_parser(name, help=help, parents=[common], description=help)
        p.set_defaults(func=func)
        return p

    def unary(name, func, help):
        p = cmd(name, func, help)
        p.add_argument("automaton", help=".aut file or - for stdin")
        return p

    def binary(name, func, help):
        p = cmd(name, func, help)
        p.add_argument("left")
        p.add_argument("right")
        return p

    p = unary("det", cmd_det, "determinize (accessible subset automaton)")
    p.add_argument("--prune", action="store_true", help="also drop states that cannot reach a final state")
    p.add_argument("--full", action="store_true", help="the full subset automaton on all 2^|Q| subsets")
    p.add_argument("--subset-cap", type=int, default=None, help="|Q| limit for --full")
    p = unary("min", cmd_min, "minimal complete DFA, with its state classes")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="moore")
    unary("trim", cmd_trim, "keep accessible and co-accessible states")
    unary("complete", cmd_complete, "add a sink state for undefined moves")
    unary("complement", cmd_complement, "complement (determinize, complete, swap finals)")
    p = binary("product", cmd_product, "synchronous product")
    p.add_argument("--mode", choices=("intersect", "union"), default="intersect")
    binary("concat", cmd_concat, "concatenation")
    unary("star", cmd_star, "Kleene star")
    p = unary("morph", cmd_morph, "image under a morphism")
    p.add_argument("--map", required=True, help="'a->bc b->eps' or a .mor file")
    p = unary("invmorph", cmd_invmorph, "inverse image under a morphism")
    p.add_argument("--map", required=True, help="'a->bc b->eps' or a .mor file")
    p = unary("quotient", cmd_quotient, "quotient by the language of another automaton")
    p.add_argument("--by", required=True, help=".aut file of the divisor language")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = unary("closure", cmd_closure, "prefixes, suffixes, factors, mirror or subwords")
    p.add_argument("--kind", choices=ops.CLOSURE_KINDS, required=True)
    binary("shuffle", cmd_shuffle, "shuffle product")
    binary("eq", cmd_eq, "language equivalence (exit 1 with a counterexample if not)")
    binary("incl", cmd_incl, "language inclusion left ⊆ right")
    unary("empty", cmd_empty, "emptiness (exit 1 with a shortest word if not empty)")
    p = unary("enum", cmd_enum, "accepted words up to a length, shortlex order")
    p.add_argument("--maxlen", type=int, required=True)

    rx = cmd("regex", None, "rational expressions").add_subparsers(dest="action", metavar="ACTION")
    rx.required = True
    for name, func, help in (
        ("compile", cmd_regex_compile, "expression to automaton"),
        ("simplify", cmd_regex_simplify, "language-preserving simplification"),
    ):
        p = cmd(name, func, help, rx)
        p.add_argument("expression", nargs="?")
        p.add_argument("--file", help="read the expression from a file")
        p.add_argument("--alphabet", help="alphabet symbols, e.g. 'a b'")
        if name == "compile":
            p.add_argument("--dialect", choices=regex.DIALECTS, default="extended")
    p = cmd("extract", cmd_regex_extract, "automaton to expression (state elimination)", rx)
    p.add_argument("automaton")
    p.add_argument("--simplify", action="store_true")

    mso = cmd("mso", None, "monadic second-order logic on words").add_subparsers(dest="action", metavar="ACTION")
    mso.required = True
    p = cmd("compile", cmd_mso_compile, "formula to minimal DFA over its track alphabet", mso)
    p.add_argument("formula", help=".mso file")
    p.add_argument("--track-order", help="free variables in track order, e.g. 'x,X'")
    p = cmd("eval", cmd_mso_eval, "evaluate on a word (exit 1 if false)", mso)
    p.add_argument("formula")
    p.add_argument("word")
    p.add_argument("--assign", action="append", metavar="VAR=VALUE", help="x=2 or X=0,3")
    p = cmd("valid", cmd_mso_valid, "validity of a sentence", mso)
    p.add_argument("formula")
    p = cmd("sat", cmd_mso_sat, "satisfiability of a sentence", mso)
    p.add_argument("formula")
    p = cmd("from-dfa", cmd_mso_from_dfa, "sentence describing the runs of a DFA", mso)
    p.add_argument("automaton")

    mon = cmd("monoid", None, "transition and syntactic monoids").add_subparsers(dest="action", metavar="ACTION")
    mon.required = True
    p = cmd("of", cmd_monoid_of, "transition monoid of an automaton", mon)
    p.add_argument("automaton")
    p = cmd("syntactic", cmd_monoid_syntactic, "syntactic monoid of a language", mon)
    p.add_argument("language", help=".aut, .mso or an inline expression")
    p.add_argument("--alphabet")
    p = cmd("aperiodic", cmd_monoid_aperiodic, "aperiodicity (exit 1 with a group witness)", mon)
    p.add_argument("source", help=".mon or .aut file")
    for name, func, help in (
        ("recognize", cmd_monoid_recognize, "automaton for the preimage of a subset"),
        ("divide", cmd_monoid_divide, "morphism from a submonoid onto the syntactic monoid"),
    ):
        p = cmd(name, func, help, mon)
        p.add_argument("monoid", help=".mon file")
        p.add_argument("--images", required=True, help="letter images, e.g. 'a=1 b=2'")
        p.add_argument("--accept", required=True, help="accepting elements, e.g. '0 3'")
    p = cmd("iso", cmd_monoid_iso, "monoid isomorphism", mon)
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("fo-definable", cmd_fo_definable, "first-order definability via aperiodicity")
    p.add_argument("language", help=".aut, .mso or an inline expression")
    p.add_argument("--alphabet")

    sf = cmd("starfree", None, "star-free expressions").add_subparsers(dest="action", metavar="ACTION")
    sf.required = True
    p = cmd("extract", cmd_starfree_extract, "star-free expression for an aperiodic language", sf)
    p.add_argument("language", help=".aut, .mso or an inline expression")
    p.add_argument("--alphabet")
    p.add_argument("--trace", action="store_true", help="print the derivation to stderr")
    p.add_argument("--no-validate", action="store_true", help="skip the equivalence check of the result")
    p = cmd("to-fo", cmd_starfree_to_fo, "FO(<) sentence for a star-free expression", sf)
    p.add_argument("expression", nargs="?")
    p.add_argument("--file")
    p.add_argument("--alphabet")
    p.add_argument("--fresh-variables", action="store_true", help="one new variable per concatenation")

    pump = cmd("pump", None, "pumping lemmas").add_subparsers(dest="action", metavar="ACTION")
    pump.required = True
    p = cmd("split", cmd_pump_split, "pumpable factorization of an accepted word", pump)
    p.add_argument("automaton")
    p.add_argument("word")
    p.add_argument("--positions", help="cut points, e.g. '0 1 2 3'")
    p.add_argument("--check", type=int, default=5, help="check exponents 0..N (default 5)")

    def predicate_options(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--predicate", choices=tuple(pumping.BUILTIN_PREDICATES))
        g.add_argument("--program", help="counter program file")
        g.add_argument("--automaton-predicate", help=".aut file used as membership test")

    p = cmd("verify", cmd_pump_verify, "replay a certificate (exit 1 if it does not hold)", pump)
    p.add_argument("certificate", help=".cert file")
    predicate_options(p)
    p = cmd("refute", cmd_pump_refute, "search for a non-rationality certificate", pump)
    predicate_options(p)
    p.add_argument("--variant", choices=pumping.VARIANTS, default="simple")
    p.add_argument("--n-bound", type=int, default=4)
    p.add_argument("--search-len", type=int, default=8)
    p.add_argument("--exponents", default="0 2")
    p.add_argument("--budget", type=int, default=2_000_000, help="membership query budget")
    p.add_argument("--out", help="also write the certificate to this file")

    p = cmd("random", cmd_random, "seeded random automaton, expression or sentence")
    p.add_argument("kind", choices=("dfa", "nfa", "regex", "mso"))
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--size", type=int, default=6, help="expression nodes or sentence depth")
    p.add_argument("--alphabet", default="a b")
    return parser


def run(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        job = Job(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if stdout is not None:
        job.out = stdout
    try:
        return args.func(job, args)
    except RationalKitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        sub = getattr(exc, "subformula", None)
        if sub:
            sys.stderr.write(f"  while compiling: {sub}\n")
        return exc.exit_code
    except BrokenPipeError:
        return 0


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
