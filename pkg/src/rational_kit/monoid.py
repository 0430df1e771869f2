"""Transition monoids, syntactic monoids and recognition by finite monoids.

A :class:`FiniteMonoid` is a multiplication table plus bookkeeping:
identity, the images of the letters, and for each element a shortlex-least
word representing it.  Transition monoids also keep their state maps, which
is how the multiplication table is filled in (lazily, since it has
``|M|²`` entries).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .automata import Alphabet, Dfa, Nfa, Word, to_dfa
from .config import DEFAULT_CAPS
from .errors import ContractError, InputError, ResourceError

TABLE_LIMIT = 20_000  # largest monoid whose full table we agree to materialize


class _MapIndex:
    """Lookup of state maps (rows of an int array) to element ids."""

    def __init__(self, maps: np.ndarray):
        self.n = maps.shape[1]
        self.coded = self.n == 0 or self.n ** self.n < 2**62
        if self.coded:
            self.weights = np.array([self.n**q for q in range(self.n)], dtype=np.int64)
            codes = maps @ self.weights if self.n else np.zeros(len(maps), dtype=np.int64)
            self.order = np.argsort(codes, kind="stable")
            self.sorted = codes[self.order]
        else:
            self.table = {row.tobytes(): i for i, row in enumerate(maps)}

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        if self.coded:
            codes = rows @ self.weights if self.n else np.zeros(len(rows), dtype=np.int64)
            pos = np.searchsorted(self.sorted, codes)
            pos = np.minimum(pos, len(self.sorted) - 1)
            if not (self.sorted[pos] == codes).all():
                raise ContractError("state map is not an element of this monoid")
            return self.order[pos]
        try:
            return np.array([self.table[np.ascontiguousarray(r).tobytes()] for r in rows], dtype=np.int64)
        except KeyError:
            raise ContractError("state map is not an element of this monoid") from None


class FiniteMonoid:
    """A finite monoid given by its multiplication table or by state maps.

    ``table[i, j]`` is the product ``i·j``.  For transition monoids, element
    ``i`` is the map ``maps[i]`` and ``i·j`` is "apply ``i`` then ``j``".
    """

    def __init__(
        self,
        *,
        table=None,
        maps=None,
        identity: int = 0,
        generators: dict | None = None,
        representatives=None,
        alphabet: Alphabet | None = None,
        names=None,
    ):
        if table is None and maps is None:
            raise ContractError("a monoid needs a table or state maps")
        if maps is not None:
            maps = np.asarray(maps, dtype=np.int64)
            maps.setflags(write=False)
            self.size = maps.shape[0]
        if table is not None:
            table = np.asarray(table, dtype=np.int64)
            if table.ndim != 2 or table.shape[0] != table.shape[1]:
                raise InputError("multiplication table must be square")
            if table.size and (table.min() < 0 or table.max() >= table.shape[0]):
                raise InputError("multiplication table entry out of range")
            table.setflags(write=False)
            self.size = table.shape[0]
            self.__dict__["table"] = table
        self.maps = maps
        self.identity = int(identity)
        self.generators = dict(generators or {})
        self.alphabet = alphabet
        self.representatives = tuple(tuple(w) for w in representatives) if representatives is not None else None
        self.names = tuple(names) if names is not None else None

    # -- construction helpers ----------------------------------------------------

    @classmethod
    def from_table(cls, table, identity=0, generators=None, alphabet=None, names=None) -> "FiniteMonoid":
        m = cls(table=table, identity=identity, generators=generators, alphabet=alphabet, names=names)
        if generators and alphabet is not None:
            m.representatives = _representatives(m, alphabet)
        return m

    @cached_property
    def _index(self) -> _MapIndex:
        return _MapIndex(self.maps)

    @cached_property
    def table(self) -> np.ndarray:
        if self.size > TABLE_LIMIT:
            raise ResourceError(f"multiplication table of {self.size} elements is too large to build")
        maps = self.maps
        out = np.empty((self.size, self.size), dtype=np.int64)
        for i in range(self.size):
            out[i] = self._index.lookup(maps[:, maps[i]])  # row j: apply i then j
        out.setflags(write=False)
        return out

    # -- algebra -------------------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if "table" in self.__dict__ or self.maps is None:
            return int(self.table[i, j])
        return int(self._index.lookup(self.maps[j][self.maps[i]][None, :])[0])

    def mul_many(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        left = np.asarray(left, dtype=np.int64)
        right = np.asarray(right, dtype=np.int64)
        if "table" in self.__dict__ or self.maps is None or self.size <= 2048:
            return self.table[left, right]
        maps = self.maps
        composed = np.take_along_axis(maps[right], maps[left], axis=1)
        return self._index.lookup(composed)

    def power(self, i: int, k: int) -> int:
        result, base = self.identity, i
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element_of(self, word) -> int:
        if self.alphabet is None:
            raise ContractError("monoid has no alphabet to read words with")
        e = self.identity
        for a in self.alphabet.word(word):
            e = self.mul(e, self.generators[a])
        return e

    def name(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        if self.representatives is not None and self.alphabet is not None:
            w = self.representatives[i]
            return "1" if not w else self.alphabet.show(w)
        return str(i)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, identity={self.identity})"

    def check_laws(self) -> None:
        """Exhaustive associativity, identity and closure check (raises ContractError)."""
        t = self.table
        e = self.identity
        ids = np.arange(self.size)
        if not ((t[e] == ids).all() and (t[:, e] == ids).all()):
            raise ContractError("identity law fails")
        left = t[t]  # left[i, j, k] = (i·j)·k
        right = t[:, t]  # right[i, j, k] = i·(j·k)
        if not (left == right).all():
            raise ContractError("multiplication is not associative")


def _representatives(m: FiniteMonoid, alphabet: Alphabet):
    reps = {m.identity: ()}
    queue = [m.identity]
    i = 0
    while i < len(queue):
        e = queue[i]
        i += 1
        for a in alphabet:
            f = m.mul(e, m.generators[a])
            if f not in reps:
                reps[f] = reps[e] + (a,)
                queue.append(f)
    return tuple(reps.get(e) for e in range(m.size))


# -- transition and syntactic monoids ------------------------------------------------


def transition_monoid(d: Dfa, cap: int | None = None) -> FiniteMonoid:
    """The monoid ``{f_w}`` of state maps, built breadth-first over words.

    Elements are numbered in order of discovery, so each representative is
    the shortlex-least word inducing that map and the identity is element 0.
    """
    if not isinstance(d, Dfa) or not d.is_complete:
        raise ContractError("transition_monoid needs a complete Dfa")
    cap = DEFAULT_CAPS.monoid_size if cap is None else cap
    n, k = d.num_states, len(d.alphabet)
    delta = d.delta
    ident = np.arange(n, dtype=np.int64)
    maps = [ident]
    reps = [()]
    seen = {ident.tobytes(): 0}
    generators = {}
    i = 0
    while i < len(maps):
        f = maps[i]
        for x in range(k):
            g = delta[f, x]
            key = g.tobytes()
            j = seen.get(key)
            if j is None:
                j = len(maps)
                if j >= cap:
                    raise ResourceError(f"transition monoid exceeds {cap} elements", partial=j)
                seen[key] = j
                maps.append(g)
                reps.append(reps[i] + (d.alphabet.symbols[x],))
            if i == 0:
                generators[d.alphabet.symbols[x]] = j
        i += 1
    return FiniteMonoid(
        maps=np.array(maps, dtype=np.int64).reshape(len(maps), n),
        identity=0,
        generators=generators,
        representatives=reps,
        alphabet=d.alphabet,
    )


def language_dfa(lang, alphabet=None, cap: int | None = None) -> Dfa:
    """A complete DFA for an automaton, expression or MSO sentence."""
    from . import logic, regex

    if isinstance(lang, (Nfa, Dfa)):
        return to_dfa(lang, cap=cap)
    if isinstance(lang, regex.Regex):
        return to_dfa(regex.compile_regex(lang, alphabet, cap=cap), cap=cap)
    if isinstance(lang, logic.Formula):
        if alphabet is None:
            raise InputError("an alphabet is needed to compile a formula")
        return logic.compile_formula(lang, alphabet, cap=cap)
    raise ContractError(f"cannot build an automaton from {type(lang).__name__}")


class Syntactic(NamedTuple):
    monoid: FiniteMonoid
    morphism: dict  # letter -> element (the syntactic morphism on letters)
    accepting: frozenset  # elements whose words are in L
    dfa: Dfa  # the minimal DFA the monoid was computed from


def syntactic_monoid(lang, alphabet=None, cap: int | None = None) -> Syntactic:
    """Transition monoid of the minimal automaton of ``lang``."""
    from .minimize import minimize

    d = minimize(language_dfa(lang, alphabet, cap=cap)).dfa
    m = transition_monoid(d, cap=cap)
    accepting = frozenset(i for i in range(m.size) if int(m.maps[i][d.initial]) in d.finals)
    return Syntactic(m, dict(m.generators), accepting, d)


# -- aperiodicity ----------------------------------------------------------------------


@dataclass(frozen=True)
class Aperiodicity:
    """``aperiodic`` is true iff ``m^(|M|-1) = m^|M|`` for every element.

    On failure, ``element`` is the first violating element, ``witness`` is
    its power ``element^(|M|-1)`` and ``cycle`` the cyclic group generated
    from the witness.
    """

    aperiodic: bool
    size: int
    element: int | None = None
    witness: int | None = None
    cycle: tuple = ()

    def __bool__(self):
        return self.aperiodic


def _powers(m: FiniteMonoid, k: int) -> np.ndarray:
    """``x^k`` for every element ``x``, by repeated squaring on whole vectors."""
    result = np.full(m.size, m.identity, dtype=np.int64)
    base = np.arange(m.size, dtype=np.int64)
    while k:
        if k & 1:
            result = m.mul_many(result, base)
        base = m.mul_many(base, base)
        k >>= 1
    return result


def is_aperiodic(m: FiniteMonoid) -> Aperiodicity:
    n = m.size
    high = _powers(m, max(n - 1, 0))
    higher = m.mul_many(high, np.arange(n, dtype=np.int64))
    bad = np.flatnonzero(high != higher)
    if len(bad) == 0:
        return Aperiodicity(True, n)
    x = int(bad[0])
    w = int(high[x])
    cycle = [w]
    cur = m.mul(w, x)
    while cur != w:
        cycle.append(cur)
        cur = m.mul(cur, x)
    return Aperiodicity(False, n, x, w, tuple(cycle))


# -- recognition and division -------------------------------------------------------------


def monoid_recognizes(m: FiniteMonoid, letter_images: dict, accepting, alphabet=None) -> Dfa:
    """The automaton ``(M, δ, 1, X)`` with ``δ(s, a) = s·φ(a)``; it accepts ``φ⁻¹(X)``."""
    alphabet = Alphabet.of(alphabet if alphabet is not None else tuple(letter_images))
    cols = []
    for a in alphabet:
        if a not in letter_images:
            raise InputError(f"no image given for letter {a!r}")
        img = int(letter_images[a])
        if not 0 <= img < m.size:
            raise InputError(f"image {img} of letter {a!r} is not an element")
        cols.append(m.mul_many(np.arange(m.size), np.full(m.size, img)))
    delta = np.column_stack(cols) if cols else np.zeros((m.size, 0), dtype=np.int64)
    names = tuple(m.name(i) for i in range(m.size))
    return Dfa(alphabet, delta, m.identity, frozenset(int(x) for x in accepting), names)


def generated_submonoid(m: FiniteMonoid, images) -> dict:
    """Elements reachable from the identity by right multiplication by ``images``.

    Returns ``element -> tuple of generator indices`` (a shortest product).
    """
    images = [int(x) for x in images]
    reps = {m.identity: ()}
    queue = [m.identity]
    i = 0
    while i < len(queue):
        e = queue[i]
        i += 1
        for gi, g in enumerate(images):
            f = m.mul(e, g)
            if f not in reps:
                reps[f] = reps[e] + (gi,)
                queue.append(f)
    return reps


@dataclass(frozen=True)
class MonoidMorphismWitness:
    """A verified morphism from a submonoid of ``source`` onto ``target``."""

    source: FiniteMonoid
    elements: tuple  # elements of the generated submonoid, in discovery order
    images: dict  # source element -> target element
    target: FiniteMonoid
    surjective: bool


def division_witness(m: FiniteMonoid, letter_images: dict, accepting, alphabet=None) -> MonoidMorphismWitness:
    """Build and check ``ψ`` with ``ψ(φ(u)) = μ_L(u)`` where ``L = φ⁻¹(X)``."""
    alphabet = Alphabet.of(alphabet if alphabet is not None else tuple(letter_images))
    d = monoid_recognizes(m, letter_images, accepting, alphabet)
    syn = syntactic_monoid(d)
    target = syn.monoid
    gens = [int(letter_images[a]) for a in alphabet]
    reps = generated_submonoid(m, gens)
    images = {}
    for e, word in reps.items():
        images[e] = target.element_of(tuple(alphabet.symbols[g] for g in word))
    elements = tuple(reps)
    for e in elements:
        for f in elements:
            ef = m.mul(e, f)
            if ef not in images or images[ef] != target.mul(images[e], images[f]):
                raise ContractError("letter images do not induce a well-defined morphism onto the syntactic monoid")
    surjective = set(images.values()) == set(range(target.size))
    if not surjective:
        raise ContractError("the induced morphism is not onto the syntactic monoid")
    return MonoidMorphismWitness(m, elements, images, target, surjective)


# -- isomorphism -------------------------------------------------------------------------


def _signature(m: FiniteMonoid, x: int):
    """``(index, period)`` of the cyclic submonoid generated by ``x``."""
    seen = {}
    cur, k = x, 1
    while cur not in seen:
        seen[cur] = k
        cur = m.mul(cur, x)
        k += 1
    return seen[cur], k - seen[cur]


def _generating_set(m: FiniteMonoid) -> list:
    if m.generators:
        gens = list(dict.fromkeys(g for g in m.generators.values() if g != m.identity))
        if len(generated_submonoid(m, gens)) == m.size:
            return gens
    gens = []
    reached = {m.identity}
    for x in range(m.size):
        if x not in reached:
            gens.append(x)
            reached = set(generated_submonoid(m, gens))
    return gens


@dataclass(frozen=True)
class MonoidIsomorphism:
    isomorphic: bool
    mapping: dict | None = None

    def __bool__(self):
        return self.isomorphic


def monoid_isomorphic(m1: FiniteMonoid, m2: FiniteMonoid, cap: int | None = None) -> MonoidIsomorphism:
    """Exact isomorphism test by backtracking over images of a generating set."""
    cap = DEFAULT_CAPS.isomorphism_size if cap is None else cap
    if m1.size != m2.size:
        return MonoidIsomorphism(False)
    if m1.size > cap:
        raise ResourceError(f"isomorphism test limited to {cap} elements (got {m1.size})")
    n = m1.size
    t1, t2 = m1.table, m2.table
    sig1 = [_signature(m1, x) for x in range(n)]
    sig2 = [_signature(m2, x) for x in range(n)]
    if sorted(sig1) != sorted(sig2):
        return MonoidIsomorphism(False)
    gens = _generating_set(m1)
    tree = generated_submonoid(m1, gens)  # element -> generator word
    order = sorted(tree, key=lambda e: (len(tree[e]), tree[e]))
    candidates = [[y for y in range(n) if sig2[y] == sig1[g] and y != m2.identity] for g in gens]

    def extend(images):
        phi = np.full(n, -1, dtype=np.int64)
        phi[m1.identity] = m2.identity
        for e in order:
            word = tree[e]
            if not word:
                continue
            parent = tree_parent[e]
            phi[e] = t2[phi[parent], images[word[-1]]]
        if len(set(phi.tolist())) != n:
            return None
        if not (phi[t1] == t2[phi[:, None], phi[None, :]]).all():
            return None
        return phi

    tree_parent = {}
    lookup = {w: e for e, w in tree.items()}
    for e, w in tree.items():
        if w:
            tree_parent[e] = lookup[w[:-1]]

    def search(i, images):
        if i == len(gens):
            return extend(images)
        for y in candidates[i]:
            found = search(i + 1, images + [y])
            if found is not None:
                return found
        return None

    phi = search(0, [])
    if phi is None:
        return MonoidIsomorphism(False)
    return MonoidIsomorphism(True, {i: int(phi[i]) for i in range(n)})


def cyclic_group(n: int) -> FiniteMonoid:
    """``Z/n`` as a monoid, with a single generator ``a`` mapped to 1."""
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteMonoid.from_table(table, 0, {"a": 1 % n}, Alphabet(("a",)))


def word_of(m: FiniteMonoid, e: int) -> Word:
    if m.representatives is None:
        raise ContractError("monoid has no representatives")
    return m.representatives[e]
