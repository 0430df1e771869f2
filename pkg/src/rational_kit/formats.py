"""Text formats: automata (.aut), morphisms (.mor), formulas (.mso),
monoids (.mon) and pumping certificates (.cert).

Every reader takes the file contents and reports problems as
:class:`InputError` with a 1-based line number.  Every writer produces text
that its reader maps back to an equal object.
"""

from __future__ import annotations

import numpy as np

from .automata import EPS, EPS_TOKEN, Alphabet, Nfa, as_nfa
from .errors import InputError
from .logic import Formula, parse_formula, to_text
from .monoid import FiniteMonoid
from .ops import Morphism
from .pumping import VARIANTS, FailureRow, PumpCertificate


def _lines(text: str):
    """Non-blank lines with comments stripped, as ``(line number, content)``."""
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _header(line: str, number: int, key: str) -> str:
    head, sep, rest = line.partition(":")
    if not sep or head.strip() != key:
        raise InputError(f"expected '{key}:'", number)
    return rest.strip()


def _int(token: str, number: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {token!r}", number) from None


# -- automata ---------------------------------------------------------------------


def read_automaton(text: str):
    """Parse ``.aut`` text.  Deterministic input (one initial state, no ε, no
    two moves on one letter) comes back as a :class:`Dfa`, anything else as
    an :class:`Nfa`."""
    lines = list(_lines(text))
    if not lines:
        raise InputError("empty automaton file", 1)
    it = iter(lines)

    def take(key, optional=False):
        nonlocal pending
        if pending is None:
            try:
                pending = next(it)
            except StopIteration:
                if optional:
                    return None, None
                raise InputError(f"missing '{key}:' line", lines[-1][0] + 1) from None
        number, line = pending
        head = line.partition(":")[0].strip()
        if head != key:
            if optional:
                return None, None
            raise InputError(f"expected '{key}:' here (sections are alphabet, states, names, initial, final)", number)
        pending = None
        return number, _header(line, number, key)

    pending = None
    number, body = take("alphabet")
    try:
        alphabet = Alphabet(tuple(body.split()))
    except InputError as exc:
        raise InputError(str(exc), number) from None
    number, body = take("states")
    n = _int(body, number, "state count")
    if n < 0:
        raise InputError("state count must be non-negative", number)
    names = None
    number, body = take("names", optional=True)
    if number is not None:
        names = tuple(body.split())
        if len(names) != n:
            raise InputError(f"{len(names)} names for {n} states", number)

    def state(token, number):
        q = _int(token, number, "state id")
        if not 0 <= q < n:
            raise InputError(f"state {q} out of range 0..{n - 1}", number)
        return q

    number, body = take("initial")
    initials = [state(t, number) for t in body.split()]
    if len(set(initials)) != len(initials):
        raise InputError("initial state listed twice", number)
    number, body = take("final")
    finals = [state(t, number) for t in body.split()]
    if len(set(finals)) != len(finals):
        raise InputError("final state listed twice", number)
    trans = set()
    rest = ([pending] if pending is not None else []) + list(it)
    for number, line in rest:
        parts = line.split()
        if len(parts) != 3:
            raise InputError("expected a transition 'p symbol q'", number)
        p, sym, q = state(parts[0], number), parts[1], state(parts[2], number)
        if sym == EPS_TOKEN:
            x = EPS
        elif sym in alphabet:
            x = alphabet.id(sym)
        else:
            raise InputError(f"unknown symbol {sym!r} (alphabet: {' '.join(alphabet)})", number)
        if (p, x, q) in trans:
            raise InputError(f"duplicate transition {parts[0]} {sym} {parts[2]}", number)
        trans.add((p, x, q))
    nfa = Nfa(alphabet, n, frozenset(trans), frozenset(initials), frozenset(finals), names)
    return nfa.to_dfa() if nfa.is_deterministic else nfa


def write_automaton(a) -> str:
    nfa = as_nfa(a)
    out = [f"alphabet: {' '.join(nfa.alphabet)}", f"states: {nfa.num_states}"]
    if nfa.names is not None:
        out.append(f"names: {' '.join(nfa.names)}")
    out.append(("initial: " + " ".join(map(str, sorted(nfa.initials)))).rstrip())
    out.append(("final: " + " ".join(map(str, sorted(nfa.finals)))).rstrip())
    for p, x, q in sorted(nfa.transitions):
        out.append(f"{p} {EPS_TOKEN if x == EPS else nfa.alphabet.symbols[x]} {q}")
    return "\n".join(out) + "\n"


# -- morphisms ----------------------------------------------------------------------


def read_morphism(text: str) -> Morphism:
    """``.mor``: optional ``source:`` and ``target:`` lines, then ``morphism: a->bc b->eps`` lines."""
    source = target = None
    items = []
    first = None
    for number, line in _lines(text):
        head = line.partition(":")[0].strip()
        body = _header(line, number, head)
        try:
            if head == "source":
                source = Alphabet(tuple(body.split()))
            elif head == "target":
                target = Alphabet(tuple(body.split()))
            elif head == "morphism":
                first = first or number
                items.append(body)
            else:
                raise InputError(f"unknown section {head!r} (source, target, morphism)")
        except InputError as exc:
            if exc.line is not None:
                raise
            raise InputError(str(exc), number) from None
    if not items:
        raise InputError("no 'morphism:' line", 1)
    try:
        return Morphism.parse(" ".join(items), source, target)
    except InputError as exc:
        raise InputError(str(exc), first) from None


def write_morphism(phi: Morphism) -> str:
    def image(w):
        if not w:
            return EPS_TOKEN
        return "".join(w)

    if not phi.target.single_chars:
        raise InputError("the .mor format writes images without separators; target symbols must be single characters")
    pairs = " ".join(f"{a}->{image(phi.images[a])}" for a in phi.source)
    return f"source: {' '.join(phi.source)}\ntarget: {' '.join(phi.target)}\nmorphism: {pairs}\n"


# -- formulas -----------------------------------------------------------------------


def read_formula(text: str):
    """``.mso``: an ``alphabet:`` header line, then the formula (may span lines)."""
    lines = text.splitlines()
    for index, raw in enumerate(lines):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        body = _header(line, index + 1, "alphabet")
        try:
            alphabet = Alphabet(tuple(body.split()))
        except InputError as exc:
            raise InputError(str(exc), index + 1) from None
        rest = "\n" * (index + 1) + "\n".join(lines[index + 1 :])
        if not rest.strip():
            raise InputError("no formula after the alphabet line", index + 2)
        return parse_formula(rest, alphabet), alphabet
    raise InputError("empty formula file", 1)


def write_formula(phi: Formula, alphabet) -> str:
    return f"alphabet: {' '.join(Alphabet.of(alphabet))}\n{to_text(phi)}\n"


# -- monoids -------------------------------------------------------------------------


def read_monoid(text: str) -> FiniteMonoid:
    """``.mon``: ``size:``, ``identity:``, optional ``names:``, ``gen: a -> i`` lines, then the table rows."""
    size = identity = None
    names = None
    gens = {}
    rows = []
    for number, line in _lines(text):
        head, sep, body = line.partition(":")
        head = head.strip()
        if sep and head in ("size", "identity", "names", "gen"):
            if rows:
                raise InputError(f"'{head}:' after the table", number)
            body = body.strip()
            if head == "size":
                size = _int(body, number, "size")
            elif head == "identity":
                identity = _int(body, number, "identity")
            elif head == "names":
                names = tuple(body.split())
            else:
                sym, arrow, elem = body.partition("->")
                if not arrow or not sym.strip():
                    raise InputError("expected 'gen: symbol -> element'", number)
                sym = sym.strip()
                if sym in gens:
                    raise InputError(f"generator {sym!r} given twice", number)
                gens[sym] = _int(elem.strip(), number, "generator image")
            continue
        rows.append((number, [_int(t, number, "table entry") for t in line.split()]))
    if size is None:
        raise InputError("missing 'size:' line", 1)
    if identity is None:
        raise InputError("missing 'identity:' line", 1)
    if len(rows) != size:
        where = rows[-1][0] if rows else 1
        raise InputError(f"table has {len(rows)} rows, expected {size}", where)
    for number, row in rows:
        if len(row) != size:
            raise InputError(f"row has {len(row)} entries, expected {size}", number)
        for v in row:
            if not 0 <= v < size:
                raise InputError(f"entry {v} out of range 0..{size - 1}", number)
    if not 0 <= identity < size:
        raise InputError(f"identity {identity} out of range", 1)
    if names is not None and len(names) != size:
        raise InputError(f"{len(names)} names for {size} elements", 1)
    for sym, g in gens.items():
        if not 0 <= g < size:
            raise InputError(f"generator {sym!r} maps outside the monoid", 1)
    table = np.array([row for _, row in rows], dtype=np.int64).reshape(size, size)
    alphabet = Alphabet(tuple(gens)) if gens else None
    return FiniteMonoid.from_table(table, identity, gens or None, alphabet, names)


def write_monoid(m: FiniteMonoid) -> str:
    out = [f"size: {m.size}", f"identity: {m.identity}"]
    if m.names is not None:
        out.append(f"names: {' '.join(m.names)}")
    symbols = m.alphabet.symbols if m.alphabet is not None else tuple(m.generators)
    out.extend(f"gen: {a} -> {m.generators[a]}" for a in symbols if a in m.generators)
    width = len(str(max(m.size - 1, 0)))
    out.extend(" ".join(str(int(v)).rjust(width) for v in row) for row in m.table)
    return "\n".join(out) + "\n"


# -- pumping certificates -------------------------------------------------------------


def write_certificate(cert: PumpCertificate) -> str:
    show = cert.alphabet.show
    out = [
        f"predicate: {cert.predicate}",
        f"alphabet: {' '.join(cert.alphabet)}",
        f"variant: {cert.variant}",
        f"n_bound: {cert.n_bound}",
        f"word: {show(cert.word)}",
        f"positions: {' '.join(map(str, cert.positions))}",
        f"exponents: {' '.join(map(str, cert.exponents))}",
    ]
    if cert.template:
        out.append(f"template: {cert.template}")
    for row in cert.rows:
        outcomes = " ".join(f"{e}:{'in' if v else 'out'}" for e, v in row.outcomes)
        out.append(f"row: {row.j} {row.k} m={row.m} {outcomes}")
    return "\n".join(out) + "\n"


def read_certificate(text: str) -> PumpCertificate:
    fields = {}
    rows = []
    for number, line in _lines(text):
        head, sep, body = line.partition(":")
        head = head.strip()
        if not sep:
            raise InputError("expected 'key: value'", number)
        body = body.strip()
        if head == "row":
            parts = body.split()
            if len(parts) < 3 or not parts[2].startswith("m="):
                raise InputError("expected 'row: j k m=E e:in|out ...'", number)
            j, k = _int(parts[0], number, "j"), _int(parts[1], number, "k")
            m = _int(parts[2][2:], number, "m")
            outcomes = []
            for item in parts[3:]:
                e, colon, v = item.partition(":")
                if not colon or v not in ("in", "out"):
                    raise InputError(f"bad outcome {item!r}", number)
                outcomes.append((_int(e, number, "exponent"), v == "in"))
            rows.append(FailureRow(j, k, m, tuple(outcomes)))
        elif head in ("predicate", "alphabet", "variant", "n_bound", "word", "positions", "exponents", "template"):
            if head in fields:
                raise InputError(f"'{head}:' given twice", number)
            fields[head] = (number, body)
        else:
            raise InputError(f"unknown field {head!r}", number)
    for key in ("predicate", "alphabet", "variant", "n_bound", "word", "positions", "exponents"):
        if key not in fields:
            raise InputError(f"missing '{key}:' line", 1)
    number, body = fields["alphabet"]
    try:
        alphabet = Alphabet(tuple(body.split()))
        word = alphabet.word(fields["word"][1])
    except InputError as exc:
        raise InputError(str(exc), fields["word"][0]) from None
    number, variant = fields["variant"]
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r} ({'|'.join(VARIANTS)})", number)
    return PumpCertificate(
        predicate=fields["predicate"][1],
        alphabet=alphabet,
        variant=variant,
        n_bound=_int(fields["n_bound"][1], fields["n_bound"][0], "n_bound"),
        word=word,
        positions=tuple(_int(t, fields["positions"][0], "position") for t in fields["positions"][1].split()),
        exponents=tuple(_int(t, fields["exponents"][0], "exponent") for t in fields["exponents"][1].split()),
        rows=tuple(rows),
        template=fields.get("template", (0, ""))[1],
    )
