"""Finitely generated one-sided modules ``R^n / K`` and their submodule lattices.

Elements of the free cover ``R^n`` are encoded as integers in mixed radix
``|R|`` with the first coordinate most significant, so integer order is the
lexicographic order of coordinate vectors.  An element of ``M = R^n / K`` is
stored as its canonical representative: the smallest code in its coset.
Inside a module, elements are also addressed by their position in the sorted
list of canonical representatives ("element index"); submodules are bitmasks
over element indices.

Left modules over ``R`` are handled as right modules over the opposite ring:
``self.act`` is the ring whose multiplication realizes ``x . r``.
"""

from __future__ import annotations

import hashlib
from contextlib import contextmanager
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GuardExceeded, ModuleMismatch, SpecSyntaxError, check_deadline
from .rings import FiniteRing, opposite_ring

DEFAULT_MAX_MODULE_ORDER = 4096

SIDES = ("right", "left")

_module_guard = [DEFAULT_MAX_MODULE_ORDER]


@contextmanager
def module_order_guard(max_order: int):
    """Default free-cover order guard for modules built inside the block."""
    _module_guard.append(int(max_order))
    try:
        yield
    finally:
        _module_guard.pop()


def other_side(side: str) -> str:
    return "left" if side == "right" else "right"


def _mask_from_bool(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def _indices_from_mask(mask: int, size: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:size])


class Module:
    """The module ``R^n / K`` on a given side.

    Use :func:`free_module`, :func:`quotient_module` or
    :func:`module_from_relations` rather than calling this directly.
    ``relations`` must be the complete (closed) relation submodule as an
    array of free-cover codes.
    """

    def __init__(self, ring: FiniteRing, side: str, rank: int, relations: np.ndarray,
                 max_order: int | None = None):
        if side not in SIDES:
            raise ValueError(f"side must be 'right' or 'left', got {side!r}")
        if rank < 0:
            raise ValueError("rank must be >= 0")
        self.ring = ring
        self.side = side
        self.rank = rank
        if max_order is None:
            max_order = _module_guard[-1]
        self.act = ring if side == "right" else opposite_ring(ring)
        q = ring.order
        self.free_size = q**rank
        if self.free_size > max_order:
            raise GuardExceeded(f"free module of order {q}^{rank} exceeds guard {max_order}")
        self.max_order = max_order
        codes = np.arange(self.free_size)
        self.weights = q ** np.arange(rank - 1, -1, -1, dtype=np.int64)
        self.digits = (codes[:, None] // self.weights[None, :]) % q
        self.relations = np.unique(np.asarray(relations, dtype=np.int64))
        if len(self.relations) == 0 or self.relations[0] != 0:
            raise ValueError("relations must contain zero")
        if self.free_size % len(self.relations):
            raise ValueError("relation set size does not divide the free module order")
        self._canonicalize()

    # -- construction helpers -------------------------------------------------

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self.weights

    def free_add(self, a, b):
        return self.encode(self.ring.add[self.digits[a], self.digits[b]])

    def free_act(self, a, r):
        """Scalar action on free-cover codes: ``a . r`` (broadcasting)."""
        a = np.asarray(a)
        return self.encode(self.act.mul[self.digits[a], np.asarray(r)[..., None]])

    def _canonicalize(self):
        canon = np.full(self.free_size, -1, dtype=np.int64)
        rel_digits = self.digits[self.relations]
        for c in range(self.free_size):
            if canon[c] >= 0:
                continue
            check_deadline()
            coset = self.encode(self.ring.add[self.digits[c][None, :], rel_digits])
            canon[coset] = c
        self.canon = canon
        self.elements = np.unique(canon)
        index = np.empty(self.free_size, dtype=np.int64)
        index[self.elements] = np.arange(len(self.elements))
        self.index = index[canon]

    # -- basic data ---------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.size

    @property
    def is_free(self) -> bool:
        return len(self.relations) == 1

    @cached_property
    def key(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.ring.digest}|{self.side}|{self.rank}|".encode())
        h.update(self.relations.astype(np.int64).tobytes())
        return h.hexdigest()[:16]

    def __repr__(self) -> str:
        rel = "" if self.is_free else f" / <{len(self.relations)} relations>"
        return f"Module({self.ring.name!r}, {self.side}, R^{self.rank}{rel}, order={self.size})"

    @cached_property
    def relation_generators(self) -> np.ndarray:
        """A small additive generating set of the relation submodule (codes)."""
        seen = np.zeros(self.free_size, dtype=bool)
        seen[0] = True
        cur = np.zeros(1, dtype=np.int64)
        gens = []
        for r in self.relations:
            if seen[r]:
                continue
            gens.append(int(r))
            mults = [0]
            m = int(r)
            while m != 0:
                mults.append(m)
                m = int(self.free_add(m, r))
            cur = np.unique(self.free_add(cur[:, None], np.array(mults)[None, :]))
            seen[cur] = True
        return np.array(gens or [0], dtype=np.int64)

    # element-index tables; fine up to the module guard
    @cached_property
    def add_table(self) -> np.ndarray:
        e = self.elements
        return self.index[self.free_add(e[:, None], e[None, :])]

    @cached_property
    def act_table(self) -> np.ndarray:
        e = self.elements
        r = np.arange(self.ring.order)
        return self.index[self.free_act(e[:, None], r[None, :])]

    # -- element helpers --------------------------------------------------------

    def vector(self, code: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits[code])

    def element(self, vector: Sequence[int]) -> int:
        """Canonical code of the coset of a coordinate vector."""
        if len(vector) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(vector)}")
        return int(self.canon[int(self.encode(np.asarray(vector)))])

    def format_element(self, code: int) -> str:
        return "(" + ", ".join(self.ring.format(d) for d in self.vector(code)) + ")"

    def parse_element(self, text: str) -> int:
        return self.element(parse_vector(self.ring, text))

    # -- submodule constructors -----------------------------------------------

    def submodule_from_indices(self, indices, gens=None) -> "Submodule":
        flags = np.zeros(self.size, dtype=bool)
        flags[np.asarray(indices, dtype=np.int64)] = True
        return Submodule(self, _mask_from_bool(flags), gens)

    def zero(self) -> "Submodule":
        return Submodule(self, 1, ())

    def whole(self) -> "Submodule":
        return Submodule(self, (1 << self.size) - 1, None)

    def lattice(self) -> "SubmoduleLattice":
        cache = self.__dict__.setdefault("_lattices", {})
        if None not in cache:
            cache[None] = SubmoduleLattice(self, _cached_enumeration(self, None))
        return cache[None]

    def lattice_within(self, within: "Submodule") -> "SubmoduleLattice":
        cache = self.__dict__.setdefault("_lattices", {})
        if within.mask not in cache:
            cache[within.mask] = SubmoduleLattice(self, _cached_enumeration(self, within))
        return cache[within.mask]


def _cached_enumeration(M: Module, within: "Submodule | None") -> list["Submodule"]:
    from .cache import active_cache

    store = active_cache()
    if store is None:
        return enumerate_submodules(M, within)
    tag = "lattice"
    if within is not None:
        tag += "-" + hashlib.sha256(format(within.mask, "x").encode()).hexdigest()[:16]
    hit = store.get(M.key, tag)
    if isinstance(hit, list) and all(isinstance(h, str) for h in hit):
        try:
            return [Submodule(M, int(h, 16)) for h in hit]
        except ValueError:
            pass
    subs = enumerate_submodules(M, within)
    store.put(M.key, tag, [format(s.mask, "x") for s in subs])
    return subs


class Submodule:
    """A submodule, stored as a bitmask over its module's element indices."""

    __slots__ = ("module", "mask", "_gens", "_indices")

    def __init__(self, module: Module, mask: int, gens: Iterable[int] | None = None):
        self.module = module
        self.mask = mask
        self._gens = None if gens is None else tuple(int(g) for g in gens)
        self._indices = None

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = _indices_from_mask(self.mask, self.module.size)
        return self._indices

    @property
    def elements(self) -> np.ndarray:
        """Sorted canonical codes."""
        return self.module.elements[self.indices]

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.cardinality

    @property
    def gens(self) -> tuple[int, ...]:
        """Element indices generating the submodule (greedy, in element order)."""
        if self._gens is None:
            self._gens = tuple(minimal_generators(self))
        return self._gens

    def contains(self, index: int) -> bool:
        return bool(self.mask >> int(index) & 1)

    def __le__(self, other: "Submodule") -> bool:
        _same(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other) -> bool:
        return isinstance(other, Submodule) and self.module is other.module and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def sort_key(self):
        return (self.cardinality, tuple(int(c) for c in self.elements))

    def describe(self) -> list[str]:
        m = self.module
        return [m.format_element(c) for c in self.elements]

    def __repr__(self) -> str:
        body = ", ".join(self.describe()) if self.cardinality <= 8 else f"{self.cardinality} elements"
        return f"Submodule{{{body}}}"


def _same(*parts: Submodule) -> Module:
    mod = parts[0].module
    for p in parts[1:]:
        if p.module is not mod:
            raise ModuleMismatch("submodules belong to different modules")
    return mod


# ---------------------------------------------------------------------------
# constructors


def free_module(ring: FiniteRing, n: int, side: str = "right",
                max_order: int | None = None) -> Module:
    """``R^n`` on ``side``; cached per ring so lattices are shared."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    if max_order is None:
        max_order = _module_guard[-1]
    cache = ring.__dict__.setdefault("_free_modules", {})
    key = (n, side)
    mod = cache.get(key)
    if mod is None or mod.max_order < max_order:
        mod = Module(ring, side, n, np.zeros(1, dtype=np.int64), max_order)
        cache[key] = mod
    return mod


def zero_module(ring: FiniteRing, side: str = "right") -> Module:
    return Module(ring, side, 0, np.zeros(1, dtype=np.int64))


def _span_codes(mod: Module, gens: np.ndarray) -> np.ndarray:
    """Additive closure of ``gens . R`` inside the free cover (codes)."""
    if len(gens) == 0:
        return np.zeros(1, dtype=np.int64)
    r = np.arange(mod.ring.order)
    step = np.unique(mod.free_act(np.asarray(gens)[:, None], r[None, :]))
    cur = np.union1d(step, [0])
    while True:
        nxt = np.union1d(cur, mod.free_add(cur[:, None], step[None, :]).ravel())
        if len(nxt) == len(cur):
            return cur
        cur = nxt


def module_from_relations(ring: FiniteRing, n: int, side: str, relation_vectors,
                          max_order: int | None = None) -> Module:
    """``R^n`` modulo the submodule generated by ``relation_vectors``."""
    free = free_module(ring, n, side, max_order)
    gens = np.array([int(free.encode(np.asarray(v))) for v in relation_vectors], dtype=np.int64)
    return Module(ring, side, n, _span_codes(free, gens), max_order)


def quotient_module(M: Module, X: Submodule) -> tuple[Module, np.ndarray]:
    """``M / X`` with the projection as an array of element indices."""
    if X.module is not M:
        raise ModuleMismatch("X is not a submodule of M (or lies on the other side)")
    bits = np.zeros(M.size, dtype=bool)
    bits[X.indices] = True
    preimage = np.flatnonzero(bits[M.index])
    Q = Module(M.ring, M.side, M.rank, preimage, M.max_order)
    projection = Q.index[M.elements]
    return Q, projection


# ---------------------------------------------------------------------------
# submodule operations


def _closure_indices(M: Module, seeds: np.ndarray) -> np.ndarray:
    seeds = np.asarray(seeds, dtype=np.int64)
    if len(seeds) == 0:
        return np.zeros(1, dtype=np.int64)
    step = np.unique(M.act_table[seeds].ravel())
    cur = np.union1d(step, [0])
    add = M.add_table
    while True:
        nxt = np.union1d(cur, add[np.ix_(cur, step)].ravel())
        if len(nxt) == len(cur):
            return cur
        cur = nxt


def submodule_generated(M: Module, gens: Iterable[int]) -> Submodule:
    """Smallest submodule containing the given canonical codes."""
    gens = [int(g) for g in gens]
    idx = np.array([M.index[g] for g in gens], dtype=np.int64)
    return M.submodule_from_indices(_closure_indices(M, idx), gens=idx.tolist())


def span_indices(M: Module, gens: Iterable[int]) -> Submodule:
    """Like :func:`submodule_generated` but takes element indices."""
    idx = np.array(list(gens), dtype=np.int64)
    return M.submodule_from_indices(_closure_indices(M, idx), gens=idx.tolist())


def minimal_generators(X: Submodule) -> list[int]:
    """A generating set chosen greedily by largest cyclic span."""
    M = X.module
    gens: list[int] = []
    current = M.zero()
    remaining = [int(i) for i in X.indices if i != 0]
    while current.mask != X.mask:
        best, best_span = None, None
        for i in remaining:
            if current.contains(i):
                continue
            cand = span_indices(M, gens + [i])
            if best_span is None or cand.cardinality > best_span.cardinality:
                best, best_span = i, cand
                if cand.mask == X.mask:
                    break
        gens.append(best)
        current = best_span
        remaining = [i for i in remaining if not current.contains(i)]
    return gens


class Presentation:
    """``X`` written as ``R^k / K'`` with generator ``e_j`` mapped to ``gens[j]``."""

    def __init__(self, module: Module, gens: tuple, to_parent: np.ndarray):
        self.module = module
        self.gens = gens  # element indices of the parent module
        self.to_parent = to_parent  # presentation element index -> parent element index


def present_submodule(X: Submodule) -> Presentation:
    """Presentation of a submodule by a greedy generating set."""
    A = X.module
    R = A.ring
    gens = tuple(minimal_generators(X))
    k = len(gens)
    if k == 0:
        return Presentation(zero_module(R, A.side), (), np.zeros(1, dtype=np.int64))
    F = free_module(R, k, A.side, max(A.max_order, R.order**k))
    codes = np.arange(F.free_size)
    image = np.zeros(F.free_size, dtype=np.int64)
    for j, g in enumerate(gens):
        c = int(A.elements[g])
        image = A.free_add(image, A.free_act(np.full(F.free_size, c), F.digits[codes, j]))
    image_idx = A.index[image]
    P = Module(R, A.side, k, np.flatnonzero(image_idx == 0), F.max_order)
    return Presentation(P, gens, image_idx[P.elements])


def _sum2(X: Submodule, Y: Submodule) -> Submodule:
    M = X.module
    if X <= Y:
        return Y
    if Y <= X:
        return X
    idx = np.unique(M.add_table[np.ix_(X.indices, Y.indices)])
    gens = None
    if X._gens is not None and Y._gens is not None:
        gens = X._gens + Y._gens
    return M.submodule_from_indices(idx, gens=gens)


def submodule_sum(parts: Sequence[Submodule]) -> Submodule:
    if not parts:
        raise ValueError("submodule_sum needs at least one part")
    _same(*parts)
    out = parts[0]
    for p in parts[1:]:
        out = _sum2(out, p)
    return out


def submodule_intersect(parts: Sequence[Submodule]) -> Submodule:
    if not parts:
        raise ValueError("submodule_intersect needs at least one part")
    M = _same(*parts)
    mask = parts[0].mask
    for p in parts[1:]:
        mask &= p.mask
    return Submodule(M, mask)


def enumerate_elements(M: Module) -> Iterator[int]:
    """Canonical codes in increasing order."""
    for c in M.elements:
        yield int(c)


def enumerate_submodules(M: Module, within: Submodule | None = None) -> list[Submodule]:
    """All submodules (of ``within``, if given) by join-closure of cyclic submodules.

    Sorted by (cardinality, canonical element tuple).
    """
    if M.size > M.max_order:
        raise GuardExceeded(f"module of order {M.size} exceeds enumeration guard {M.max_order}")
    pool = range(M.size) if within is None else within.indices
    cyclic: dict[int, Submodule] = {}
    for i in pool:
        c = span_indices(M, [int(i)])
        cyclic.setdefault(c.mask, c)
    cyclics = sorted(cyclic.values(), key=lambda s: s.mask.bit_count())
    zero = M.zero()
    found = {zero.mask: zero}
    seen_unions = set()
    frontier = [zero]
    while frontier:
        check_deadline()
        nxt = []
        for S in frontier:
            for C in cyclics:
                if C.mask & ~S.mask == 0:
                    continue
                u = S.mask | C.mask
                if u in seen_unions:
                    continue
                seen_unions.add(u)
                T = _sum2(S, C)
                if T.mask not in found:
                    found[T.mask] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=Submodule.sort_key)


class SubmoduleLattice:
    """Enumerated submodule lattice with O(1) lookup by mask."""

    def __init__(self, module: Module, subs: list[Submodule]):
        self.module = module
        self.subs = subs
        self.position = {s.mask: i for i, s in enumerate(subs)}

    def __len__(self) -> int:
        return len(self.subs)

    def __iter__(self):
        return iter(self.subs)

    def __getitem__(self, i: int) -> Submodule:
        return self.subs[i]

    def find(self, mask: int) -> int:
        return self.position[mask]

    def canonical(self, X: Submodule) -> Submodule:
        """The lattice's own instance of ``X`` (carries generators)."""
        return self.subs[self.position[X.mask]]

    def maximal_proper(self) -> list[Submodule]:
        top = self.subs[-1].mask
        proper = [s for s in self.subs if s.mask != top]
        return [s for s in proper
                if not any(t.mask != s.mask and s.mask & ~t.mask == 0 for t in proper)]


# ---------------------------------------------------------------------------
# module spec mini-language


def split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
            continue
        cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def parse_vector(ring: FiniteRing, text: str) -> list[int]:
    t = text.strip()
    if t.startswith("(") and t.endswith(")") and len(split_top(t[1:-1], ",")) > 1:
        t = t[1:-1]
    parts = split_top(t, ",")
    if len(parts) == 1 and t.startswith("(") and t.endswith(")"):
        # "(x)" is a one-coordinate vector unless the ring literal itself uses parentheses
        try:
            return [ring.parse(t)]
        except (SpecSyntaxError, ValueError):
            return [ring.parse(t[1:-1])]
    return [ring.parse(p) for p in parts]


def parse_module_spec(ring: FiniteRing, text: str, side: str = "right",
                      max_order: int | None = None) -> Module:
    """``"free N"`` or ``"free N / [v1; v2; ...]"``."""
    head, _, rest = text.partition("/")
    words = head.split()
    if len(words) != 2 or words[0] != "free" or not words[1].isdigit():
        raise SpecSyntaxError(f"module spec must start with 'free N', got {head.strip()!r}", text, 0)
    n = int(words[1])
    if not rest.strip():
        return free_module(ring, n, side, max_order)
    body = rest.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise SpecSyntaxError("relations must be written as [v1; v2; ...]", text, text.index("/") + 1)
    vectors = [parse_vector(ring, v) for v in split_top(body[1:-1], ";") if v]
    for v in vectors:
        if len(v) != n:
            raise SpecSyntaxError(f"relation {v} has {len(v)} coordinates, expected {n}", text, 0)
    return module_from_relations(ring, n, side, vectors, max_order)
