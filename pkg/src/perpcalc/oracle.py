"""Brute-force reference implementations for cross-checking.

Nothing here reuses the closure, canonicalization or encoding code of
:mod:`perpcalc.modules` / :mod:`perpcalc.duality`: elements are plain
tuples, submodules are frozensets, morphisms are full value tables.  Only the
ring tables and the *input data* of a module (side, rank, relation vectors)
are taken from the main objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import GuardExceeded
from .rings import FiniteRing

ORACLE_BOUND = 64


class OracleModule:
    """``R^n`` modulo the submodule spanned by ``relation_vectors``."""

    def __init__(self, ring: FiniteRing, side: str, rank: int, relation_vectors=()):
        self.ring = ring
        self.side = side
        self.rank = rank
        self.zero = (0,) * rank
        self.relations = self._naive_span([tuple(v) for v in relation_vectors])
        reps = {}
        for v in itertools.product(range(ring.order), repeat=rank):
            if v in reps:
                continue
            coset = [self.add(v, k) for k in self.relations]
            rep = min(coset)
            for w in coset:
                reps[w] = rep
        self.rep = reps
        self.elements = sorted(set(reps.values()))
        if len(self.elements) > ORACLE_BOUND:
            raise GuardExceeded(f"oracle bound {ORACLE_BOUND} exceeded ({len(self.elements)} elements)")

    @classmethod
    def from_module(cls, M) -> "OracleModule":
        return cls(M.ring, M.side, M.rank, [M.vector(int(c)) for c in M.relations])

    def add(self, u, v):
        A = self.ring.add
        return tuple(int(A[a, b]) for a, b in zip(u, v))

    def scale(self, u, r):
        M = self.ring.mul
        if self.side == "right":
            return tuple(int(M[a, r]) for a in u)
        return tuple(int(M[r, a]) for a in u)

    def _naive_span(self, gens):
        span = {self.zero}
        todo = list(gens)
        while todo:
            g = todo.pop()
            if g in span:
                continue
            span.add(g)
            for r in range(self.ring.order):
                todo.append(self.scale(g, r))
            for s in list(span):
                todo.append(self.add(g, s))
        return span

    # -- in the quotient -----------------------------------------------------

    def qadd(self, u, v):
        return self.rep[self.add(u, v)]

    def qscale(self, u, r):
        return self.rep[self.scale(u, r)]

    def is_submodule(self, S: frozenset) -> bool:
        if self.zero not in S:
            return False
        return all(self.qadd(a, b) in S for a in S for b in S) and all(
            self.qscale(a, r) in S for a in S for r in range(self.ring.order))

    def cyclic(self, m) -> frozenset:
        out = {self.zero}
        multiples = {self.qscale(m, r) for r in range(self.ring.order)}
        grew = True
        while grew:
            new = {self.qadd(a, b) for a in out for b in multiples} | out
            grew = len(new) != len(out)
            out = new
        return frozenset(out)


def _saturate(zero, cyclics, join, is_closed):
    subs = {frozenset([zero])}
    frontier = list(subs)
    while frontier:
        new = []
        for S in frontier:
            for C in cyclics:
                if C <= S:
                    continue
                T = join(S, C)
                if T not in subs:
                    if not is_closed(T):
                        raise AssertionError("oracle join produced a non-submodule")
                    subs.add(T)
                    new.append(T)
        frontier = new
    # deliberately a different order from the main path
    return sorted(subs, key=lambda s: (len(s), sorted(s, reverse=True)))


def oracle_submodules(OM: OracleModule) -> list[frozenset]:
    cyclics = {OM.cyclic(m) for m in OM.elements}

    def join(S, C):
        return frozenset(OM.qadd(a, b) for a in S for b in C)

    return _saturate(OM.zero, cyclics, join, OM.is_submodule)


@dataclass(frozen=True)
class OracleHom:
    """A morphism as its generator images plus a full value table."""

    images: tuple  # h(e_1), ..., h(e_n)
    table: tuple  # value at each element of the domain, in domain order


def oracle_hom_set(OM: OracleModule, target: OracleModule | None = None) -> list[OracleHom]:
    """All morphisms ``OM -> target`` (default: R as a module on OM's side).

    Every assignment of images to the generators ``e_i`` is extended to all
    of ``R^n`` and kept only if it is constant on cosets and additive and
    ``R``-linear on the full table.
    """
    R = OM.ring
    N = target if target is not None else OracleModule(R, OM.side, 1)
    if len(N.elements) ** OM.rank > 4096:
        raise GuardExceeded("oracle hom-set bound exceeded")
    free = list(itertools.product(range(R.order), repeat=OM.rank))
    out = []
    for images in itertools.product(N.elements, repeat=OM.rank):
        values = {}
        for v in free:
            acc = N.zero
            for img, coeff in zip(images, v):
                acc = N.qadd(acc, N.qscale(img, coeff))
            values[v] = acc
        if any(values[v] != values[OM.rep[v]] for v in free):
            continue
        ok = all(values[OM.qadd(a, b)] == N.qadd(values[a], values[b])
                 for a in OM.elements for b in OM.elements)
        ok = ok and all(values[OM.qscale(a, r)] == N.qscale(values[a], r)
                        for a in OM.elements for r in range(R.order))
        if ok:
            table = tuple(values[m] for m in OM.elements)
            if N.rank == 1 and target is None:
                out.append(OracleHom(tuple(i[0] for i in images), tuple(t[0] for t in table)))
            else:
                out.append(OracleHom(images, table))
    return out


class OracleDual:
    """``Hom(M, R)`` with its scalar action on the other side."""

    def __init__(self, OM: OracleModule):
        self.base = OM
        self.homs = oracle_hom_set(OM)
        self.by_images = {h.images: h for h in self.homs}
        self.zero = (0,) * OM.rank

    def hadd(self, u, v):
        A = self.base.ring.add
        return tuple(int(A[a, b]) for a, b in zip(u, v))

    def hscale(self, u, r):
        M = self.base.ring.mul
        # right M: (r.h)(m) = r h(m); left M: (h.r)(m) = h(m) r
        if self.base.side == "right":
            return tuple(int(M[r, a]) for a in u)
        return tuple(int(M[a, r]) for a in u)

    def is_submodule(self, S) -> bool:
        if self.zero not in S:
            return False
        return all(self.hadd(a, b) in S for a in S for b in S) and all(
            self.hscale(a, r) in S for a in S for r in range(self.base.ring.order))

    def submodules(self) -> list[frozenset]:
        order = self.base.ring.order

        def cyclic(h):
            out = {self.zero}
            mult = {self.hscale(h, r) for r in range(order)}
            while True:
                new = out | {self.hadd(a, b) for a in out for b in mult}
                if new == out:
                    return frozenset(out)
                out = new

        cyclics = {cyclic(h.images) for h in self.homs}

        def join(S, C):
            return frozenset(self.hadd(a, b) for a in S for b in C)

        return _saturate(self.zero, cyclics, join, self.is_submodule)


def oracle_perp(OD: OracleDual, X=None, Y=None) -> frozenset:
    """Perp by evaluating every morphism on every element.

    With ``X`` (a set of domain elements) returns the generator images of
    the morphisms vanishing on ``X``; with ``Y`` (a set of generator-image
    tuples) returns the domain elements killed by all of ``Y``.
    """
    OM = OD.base
    pos = {m: i for i, m in enumerate(OM.elements)}
    if X is not None:
        return frozenset(h.images for h in OD.homs if all(h.table[pos[m]] == 0 for m in X))
    hs = [OD.by_images[y] for y in Y]
    return frozenset(m for m in OM.elements if all(h.table[pos[m]] == 0 for h in hs))


# ---------------------------------------------------------------------------


@dataclass
class CrossCheckReport:
    target: str
    checks: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def compare(self, name: str, main, oracle) -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if main != oracle:
            self.mismatches.append({"check": name, "main": _show(main), "oracle": _show(oracle)})


def _show(x):
    if isinstance(x, (set, frozenset)):
        return sorted(_show(e) for e in x)
    if isinstance(x, tuple):
        return list(x)
    return x


def cross_check(M) -> CrossCheckReport:
    """Compare the main path on ``M`` against the oracle, element for element."""
    from .duality import dual_module

    if M.size > ORACLE_BOUND:
        raise GuardExceeded(f"oracle bound {ORACLE_BOUND} exceeded ({M.size} elements)")
    rep = CrossCheckReport(repr(M))
    OM = OracleModule.from_module(M)
    OD = OracleDual(OM)

    def vecs(mod, sub):
        return frozenset(mod.vector(int(c)) for c in sub.elements)

    rep.compare("elements", [M.vector(int(c)) for c in M.elements], OM.elements)
    main_subs = {vecs(M, X) for X in M.lattice()}
    oracle_subs = oracle_submodules(OM)
    rep.compare("submodule_count", len(M.lattice()), len(oracle_subs))
    rep.compare("submodules", main_subs, set(oracle_subs))

    D = dual_module(M)
    amb = D.ambient
    rep.compare("dual_carrier", vecs(amb, D.carrier), frozenset(h.images for h in OD.homs))

    for X in M.lattice():
        rep.compare("perp_X", vecs(amb, D.perp(X)), oracle_perp(OD, X=vecs(M, X)))
    main_dual_subs = {vecs(amb, Y): Y for Y in D.lattice()}
    oracle_dual_subs = OD.submodules()
    rep.compare("dual_submodules", set(main_dual_subs), set(oracle_dual_subs))
    for Yset in oracle_dual_subs:
        Y = main_dual_subs.get(Yset)
        if Y is None:
            continue
        rep.compare("perp_Y", vecs(M, D.perp_dual(Y)), oracle_perp(OD, Y=Yset))
    return rep
