"""Duals ``M* = Hom(M, R)``, the two perp operators, closure and the map Phi.

For ``M = R^n / K`` a morphism ``M -> R`` is encoded by the vector
``x = (f(e_1), ..., f(e_n))``.  For a right module it acts as
``(r_1..r_n) -> sum x_i r_i`` and for a left module as ``sum r_i x_i``; both
are ``sum act(x_i, r_i)`` with the module's acting ring.  The vectors form a
submodule (the *carrier*) of the free module ``R^n`` on the other side, so the
whole submodule machinery applies to ``M*`` unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ModuleMismatch, PreconditionError
from .modules import (
    Module,
    Submodule,
    SubmoduleLattice,
    free_module,
    Presentation,
    other_side,
    present_submodule,
    zero_module,
)


class DualModule:
    """``M*`` realized as a submodule of the free module on the opposite side."""

    def __init__(self, base: Module):
        self.base = base
        self.side = other_side(base.side)
        R = base.ring
        if base.rank == 0:
            self.ambient = zero_module(R, self.side)
        else:
            self.ambient = free_module(R, base.rank, self.side, max(base.max_order, R.order**base.rank))
        rel_idx = np.unique(base.index[base.relations])
        assert list(rel_idx) == [0]
        rows = self.pair(self.ambient.elements[:, None], base.relation_generators[None, :])
        valid = np.flatnonzero((rows == 0).all(axis=1))
        self.carrier = self.ambient.submodule_from_indices(valid)

    def pair(self, x_codes, m_codes) -> np.ndarray:
        """``f_x(m)`` as ring indices; ``x`` are ambient codes, ``m`` free-cover codes of the base."""
        base = self.base
        xd = self.ambient.digits[np.asarray(x_codes)]
        md = base.digits[np.asarray(m_codes)]
        shape = np.broadcast_shapes(xd.shape[:-1], md.shape[:-1])
        acc = np.zeros(shape, dtype=np.int64)
        add, mul = base.ring.add, base.act.mul
        for i in range(base.rank):
            acc = add[acc, mul[xd[..., i], md[..., i]]]
        return acc

    @cached_property
    def table(self) -> np.ndarray:
        """``table[a, m]`` = value of ambient element index ``a`` on base element index ``m``."""
        return self.pair(self.ambient.elements[:, None], self.base.elements[None, :])

    @property
    def size(self) -> int:
        return self.carrier.cardinality

    def __len__(self) -> int:
        return self.size

    def elements(self) -> np.ndarray:
        """Carrier codes (coordinate vectors) in increasing order."""
        return self.carrier.elements

    def lattice(self) -> SubmoduleLattice:
        return self.ambient.lattice_within(self.carrier)

    def check_member(self, Y: Submodule) -> None:
        if Y.module is not self.ambient:
            raise ModuleMismatch("not a submodule of this dual")
        if Y.mask & ~self.carrier.mask:
            raise ModuleMismatch("submodule is not contained in the dual carrier")

    # -- perps ---------------------------------------------------------------------

    def perp(self, X: Submodule) -> Submodule:
        """``X^perp``: dual elements vanishing on ``X`` (tested on its generators)."""
        if X.module is not self.base:
            raise ModuleMismatch("X is not a submodule of the base module")
        rows = self.carrier.indices
        gens = list(X.gens) or [0]
        ok = (self.table[np.ix_(rows, gens)] == 0).all(axis=1)
        return self.ambient.submodule_from_indices(rows[ok])

    def perp_dual(self, Y: Submodule) -> Submodule:
        """``Y^perp``: elements of the base killed by every morphism in ``Y``."""
        self.check_member(Y)
        gens = list(Y.gens) or [0]
        ok = (self.table[gens, :] == 0).all(axis=0)
        return self.base.submodule_from_indices(np.flatnonzero(ok))

    def perp_of_set(self, indices) -> Submodule:
        """Perp of an arbitrary set of base element indices."""
        rows = self.carrier.indices
        cols = list(indices) or [0]
        ok = (self.table[np.ix_(rows, cols)] == 0).all(axis=1)
        return self.ambient.submodule_from_indices(rows[ok])

    def closure(self, Y: Submodule) -> Submodule:
        """Closure in the finite topology.

        ``f`` is in the closure when for every finite ``S`` some ``g`` in ``Y``
        agrees with ``f`` on ``S``.  ``M`` is finite so ``S = M`` suffices and
        the test is equality of full value tables.
        """
        self.check_member(Y)
        ys = {self.table[j].tobytes() for j in Y.indices}
        rows = [int(a) for a in self.carrier.indices if self.table[a].tobytes() in ys]
        return self.ambient.submodule_from_indices(rows)

    # -- presentation of M* --------------------------------------------------------

    @cached_property
    def presentation(self) -> Presentation:
        """``M*`` as ``R^k / K'`` through generators of the carrier."""
        return present_submodule(self.carrier)


def dual_module(M: Module) -> DualModule:
    """Cached ``M*``."""
    d = M.__dict__.get("_dual")
    if d is None:
        d = DualModule(M)
        M.__dict__["_dual"] = d
    return d


def eval_dual(D: DualModule, f_code: int, m_code: int) -> int:
    """``f(m)`` for an ambient code ``f`` of the carrier and a base code ``m``."""
    if not D.carrier.contains(D.ambient.index[f_code]):
        raise ModuleMismatch("f is not a morphism on this module")
    return int(D.pair(f_code, m_code))


def perp_of_submodule(X: Submodule) -> Submodule:
    return dual_module(X.module).perp(X)


def perp_of_dual_submodule(D: DualModule, Y: Submodule) -> Submodule:
    return D.perp_dual(Y)


def closure(D: DualModule, Y: Submodule) -> Submodule:
    return D.closure(Y)


# ---------------------------------------------------------------------------
# Phi: M -> *(M*)


@dataclass
class PhiMap:
    domain: Module
    dual: DualModule
    bidual: DualModule  # dual of the presentation of M*
    images: np.ndarray  # per element index of M: bidual ambient code
    verified: bool

    @cached_property
    def kernel(self) -> Submodule:
        return self.domain.submodule_from_indices(np.flatnonzero(self.images == 0))

    @property
    def injective(self) -> bool:
        return self.kernel.cardinality == 1

    @property
    def surjective(self) -> bool:
        return len(np.unique(self.images)) == self.bidual.size

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def phi_map(M: Module, verify: bool = True) -> PhiMap:
    """Materialize ``Phi_M(m)(f) = f(m)`` as codes in the bidual.

    With ``verify`` the defining identity is checked for every ``m`` and
    every ``f``, and each image is checked to be a genuine morphism.
    """
    D = dual_module(M)
    pres = D.presentation
    DD = dual_module(pres.module)
    gen_codes = D.ambient.elements[list(pres.gens)]
    if len(gen_codes) == 0:
        images = np.zeros(M.size, dtype=np.int64)
    else:
        vals = D.pair(gen_codes[None, :], M.elements[:, None])  # (|M|, k)
        images = DD.ambient.encode(vals)
    ok = True
    if verify:
        amb_idx = DD.ambient.index[images]
        ok = all(DD.carrier.contains(a) for a in amb_idx)
        lhs = DD.pair(images[:, None], pres.module.elements[None, :])
        rhs = D.pair(D.ambient.elements[pres.to_parent][None, :], M.elements[:, None])
        ok = ok and bool(np.array_equal(lhs, rhs))
        if not ok:
            raise AssertionError("Phi_M failed its defining identity")
    return PhiMap(M, D, DD, images, ok)


def phi_kernel(M: Module) -> Submodule:
    return phi_map(M).kernel


# ---------------------------------------------------------------------------
# law checks


@dataclass
class LawReport:
    module: str
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    strict: list = field(default_factory=list)  # informational strict inclusions

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, law: str, n: int = 1) -> None:
        self.checked[law] = self.checked.get(law, 0) + n

    def fail(self, law: str, **witness) -> None:
        self.violations.append({"law": law, **witness})


@dataclass
class PerpMaps:
    """Both perp maps tabulated between the two enumerated lattices."""

    module: Module
    dual: DualModule
    lat: SubmoduleLattice
    dlat: SubmoduleLattice
    down: list  # index in lat -> index in dlat of X^perp
    up: list  # index in dlat -> index in lat of Y^perp


def perp_maps(M: Module) -> PerpMaps:
    cached = M.__dict__.get("_perp_maps")
    if cached is not None:
        return cached
    D = dual_module(M)
    lat, dlat = M.lattice(), D.lattice()
    down = [dlat.find(D.perp(X).mask) for X in lat]
    up = [lat.find(D.perp_dual(Y).mask) for Y in dlat]
    pm = PerpMaps(M, D, lat, dlat, down, up)
    M.__dict__["_perp_maps"] = pm
    return pm


def _leq(a: int, b: int) -> bool:
    return a & ~b == 0


def check_galois_laws(M: Module) -> LawReport:
    """Unconditional laws: antitone perps, extensivity, triple perp, adjunction."""
    pm = perp_maps(M)
    lat, dlat, down, up = pm.lat, pm.dlat, pm.down, pm.up
    xm = [s.mask for s in lat]
    ym = [s.mask for s in dlat]
    rep = LawReport(repr(M))
    for i, a in enumerate(xm):
        for j, b in enumerate(xm):
            if i != j and _leq(a, b):
                rep.count("antitone_X")
                if not _leq(ym[down[j]], ym[down[i]]):
                    rep.fail("antitone_X", X=i, X2=j)
    for i, a in enumerate(ym):
        for j, b in enumerate(ym):
            if i != j and _leq(a, b):
                rep.count("antitone_Y")
                if not _leq(xm[up[j]], xm[up[i]]):
                    rep.fail("antitone_Y", Y=i, Y2=j)
    for i in range(len(xm)):
        rep.count("X_in_double_perp")
        if not _leq(xm[i], xm[up[down[i]]]):
            rep.fail("X_in_double_perp", X=i)
        rep.count("triple_perp_X")
        if down[up[down[i]]] != down[i]:
            rep.fail("triple_perp_X", X=i)
    for j in range(len(ym)):
        rep.count("Y_in_double_perp")
        if not _leq(ym[j], ym[down[up[j]]]):
            rep.fail("Y_in_double_perp", Y=j)
        rep.count("triple_perp_Y")
        if up[down[up[j]]] != up[j]:
            rep.fail("triple_perp_Y", Y=j)
    for i in range(len(xm)):
        # X^perp is closed: closure is computed, not assumed
        rep.count("perp_X_closed")
        Yp = dlat[down[i]]
        if pm.dual.closure(Yp).mask != Yp.mask:
            rep.fail("perp_X_closed", X=i)
    for i in range(len(xm)):
        for j in range(len(ym)):
            rep.count("galois_adjunction")
            if _leq(ym[j], ym[down[i]]) != _leq(xm[i], xm[up[j]]):
                rep.fail("galois_adjunction", X=i, Y=j)
    return rep


def all_pairs(lat: SubmoduleLattice) -> list[list[Submodule]]:
    n = len(lat)
    return [[lat[i], lat[j]] for i in range(n) for j in range(i, n)]


def check_sum_intersect_laws(M: Module, families=None, dual_families=None,
                             self_injective: bool | None = None,
                             pf: bool | None = None) -> LawReport:
    """Sum/intersection laws for perps on ``M`` and on ``M*``.

    ``families`` are lists of submodules of ``M``; ``dual_families`` lists of
    submodules of ``M*``.  Both default to all unordered pairs; pairwise
    equality for every pair of submodules extends to all finite families by
    induction, since intersections are again submodules.

    Equality in the intersection law on ``M`` is asserted only when ``R`` is
    self-injective on ``M``'s side, and on ``M*`` only when ``R`` is PF.
    Those flags are computed when not supplied.
    """
    from . import pf as pfmod

    R = M.ring
    if self_injective is None:
        self_injective = pfmod.is_self_injective(R, M.side).holds
    if pf is None:
        pf = pfmod.is_pf(R).is_pf
    pm = perp_maps(M)
    D = pm.dual
    if families is None:
        families = all_pairs(pm.lat)
    if dual_families is None:
        dual_families = all_pairs(pm.dlat)
    rep = LawReport(repr(M))
    for fam in families:
        perps = [D.perp(X) for X in fam]
        total = _fold_sum(fam)
        meet = _fold_meet(fam)
        rep.count("perp_of_sum_X")
        if D.perp(total).mask != _fold_meet(perps).mask:
            rep.fail("perp_of_sum_X", family=[_desc(X) for X in fam])
        lhs, rhs = D.perp(meet), _fold_sum(perps)
        rep.count("perp_of_meet_X_contains")
        if not rhs <= lhs:
            rep.fail("perp_of_meet_X_contains", family=[_desc(X) for X in fam])
        if lhs.mask != rhs.mask:
            if self_injective:
                rep.count("perp_of_meet_X_equal")
                rep.fail("perp_of_meet_X_equal", family=[_desc(X) for X in fam])
            else:
                rep.strict.append({"law": "perp_of_meet_X", "family": [_desc(X) for X in fam],
                                   "lhs": _desc(lhs), "rhs": _desc(rhs)})
        elif self_injective:
            rep.count("perp_of_meet_X_equal")
    for fam in dual_families:
        for Y in fam:
            D.check_member(Y)
        perps = [D.perp_dual(Y) for Y in fam]
        total = _fold_sum(fam)
        meet = _fold_meet(fam)
        rep.count("perp_of_sum_Y")
        if D.perp_dual(total).mask != _fold_meet(perps).mask:
            rep.fail("perp_of_sum_Y", family=[_desc(Y) for Y in fam])
        lhs, rhs = D.perp_dual(meet), _fold_sum(perps)
        rep.count("perp_of_meet_Y_contains")
        if not rhs <= lhs:
            rep.fail("perp_of_meet_Y_contains", family=[_desc(Y) for Y in fam])
        if lhs.mask != rhs.mask:
            if pf:
                rep.count("perp_of_meet_Y_equal")
                rep.fail("perp_of_meet_Y_equal", family=[_desc(Y) for Y in fam])
            else:
                rep.strict.append({"law": "perp_of_meet_Y", "family": [_desc(Y) for Y in fam],
                                   "lhs": _desc(lhs), "rhs": _desc(rhs)})
        elif pf:
            rep.count("perp_of_meet_Y_equal")
    return rep


def _fold_sum(parts):
    from .modules import submodule_sum

    return submodule_sum(list(parts))


def _fold_meet(parts):
    from .modules import submodule_intersect

    return submodule_intersect(list(parts))


def _desc(S: Submodule) -> list[str]:
    return S.describe()


def is_dense(D: DualModule, Y: Submodule, pf_verified: bool | None = None) -> bool:
    """``Y`` is dense in ``M*`` iff ``Y^perp = 0`` (requires R PF or a field).

    Over a finite module density also means ``Y = M*``; that coincidence is
    asserted.
    """
    if pf_verified is None:
        from . import pf as pfmod

        pf_verified = pfmod.is_pf(D.base.ring).is_pf
    if not pf_verified:
        raise PreconditionError("is_dense needs a PF ring (density and zero perp differ otherwise)")
    dense = D.perp_dual(Y).cardinality == 1
    assert dense == (D.closure(Y).mask == D.carrier.mask), "density / zero-perp mismatch over a PF ring"
    return dense
