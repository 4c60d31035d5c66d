"""Infinite-dimensional counterexamples by exact truncated linear algebra.

``V`` has basis ``e_0, e_1, ...`` over GF(q).  Vectors have finite support;
functionals are restricted to eventually constant ones (a finite prefix plus
a constant tail), which contains every ``e_n*`` and the all-ones functional.

A family of functionals is one of a closed catalog of kinds.  For each kind
we know exactly which generators can be nonzero on vectors supported below
``m`` (the horizon rule), so perps computed at bound ``m`` are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import PreconditionError
from .ringspec import is_prime


def _check_field(q: int) -> int:
    if not is_prime(q):
        raise PreconditionError(f"field characteristic must be prime, got {q}")
    return q


@dataclass(frozen=True)
class FinSuppVector:
    coeffs: tuple  # ((index, value), ...) sorted, values nonzero mod q
    q: int = 2

    @classmethod
    def from_dense(cls, values, q: int = 2) -> "FinSuppVector":
        return cls(tuple((i, v % q) for i, v in enumerate(values) if v % q), q)

    @classmethod
    def basis(cls, n: int, q: int = 2) -> "FinSuppVector":
        return cls(((n, 1),), q)

    def dense(self, length: int) -> list[int]:
        out = [0] * length
        for i, v in self.coeffs:
            out[i] = v
        return out

    @property
    def support_bound(self) -> int:
        return self.coeffs[-1][0] + 1 if self.coeffs else 0

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"e_{i}" if v == 1 else f"{v}*e_{i}" for i, v in self.coeffs)


@dataclass(frozen=True)
class EvTailFunctional:
    prefix: tuple
    tail: int
    q: int = 2

    @classmethod
    def make(cls, prefix, tail: int = 0, q: int = 2) -> "EvTailFunctional":
        tail %= q
        pre = [c % q for c in prefix]
        while pre and pre[-1] == tail:
            pre.pop()
        return cls(tuple(pre), tail, q)

    @classmethod
    def dual_basis(cls, n: int, q: int = 2) -> "EvTailFunctional":
        return cls.make([0] * n + [1], 0, q)

    @classmethod
    def all_ones(cls, q: int = 2) -> "EvTailFunctional":
        return cls.make([], 1, q)

    def value_at(self, i: int) -> int:
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def window(self, length: int) -> list[int]:
        return [self.value_at(i) for i in range(length)]

    def encode(self, horizon: int) -> list[int]:
        """Exact coordinates (values below ``horizon``, tail) when the prefix fits."""
        if len(self.prefix) > horizon:
            raise PreconditionError("prefix longer than horizon")
        return self.window(horizon) + [self.tail]

    def __str__(self) -> str:
        if self.tail:
            if not self.prefix and self.tail == 1:
                return "all-ones"
            return "(" + " ".join(str(c) for c in self.prefix) + f" | {self.tail}...)"
        terms = [f"e_{i}*" if c == 1 else f"{c}*e_{i}*" for i, c in enumerate(self.prefix) if c]
        return " + ".join(terms) or "0"


def eval_functional(f: EvTailFunctional, v: FinSuppVector) -> int:
    return sum(f.value_at(i) * c for i, c in v.coeffs) % f.q


# ---------------------------------------------------------------------------
# GF(q) row reduction


def rref(rows, q: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [[x % q for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], q - 2, q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                k = M[i][c]
                M[i] = [(a - k * b) % q for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows, ncols: int, q: int) -> list[list[int]]:
    R, pivots = rref(rows, q) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc] % q
        basis.append(v)
    return basis


def in_row_space(rows, target, q: int) -> bool:
    base = len(rref(rows, q)[1]) if rows else 0
    return len(rref(list(rows) + [target], q)[1]) == base


# ---------------------------------------------------------------------------
# catalog


KINDS = ("VnPerpChain", "StandardDualsH", "LWithAllOnes", "WindowSums")


@dataclass(frozen=True)
class FunctionalFamily:
    """A catalog family of functionals.

    * ``VnPerpChain(n)``: ``V_n^perp = <e_k* | k < n>``; with ``n=None`` the
      union (= sum) of the whole chain, ``<e_k* | k in N>``.
    * ``StandardDualsH(start)``: ``<e_k* | k >= start>``; ``start=0`` is H,
      ``start=1`` is the intersection of H and L.
    * ``LWithAllOnes``: ``<f*, e_k* | k >= 1>`` with ``f*`` the all-ones functional.
    * ``WindowSums(p)``: ``H_p = <e_n* + ... + e_{n+p}* | n in N>``.
    """

    kind: str
    param: int | None = None
    q: int = 2

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown catalog kind {self.kind!r}")
        _check_field(self.q)
        if self.kind == "WindowSums" and (self.param is None or self.param < 0):
            raise PreconditionError("WindowSums needs p >= 0")

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}({self.param})"

    def generators(self, horizon: int) -> list[EvTailFunctional]:
        """Generators that can be nonzero on vectors supported below ``horizon``."""
        q, k, p = self.q, self.kind, self.param
        if k == "VnPerpChain":
            top = horizon if p is None else min(p, horizon)
            return [EvTailFunctional.dual_basis(i, q) for i in range(top)]
        if k == "StandardDualsH":
            return [EvTailFunctional.dual_basis(i, q) for i in range(p or 0, horizon)]
        if k == "LWithAllOnes":
            return [EvTailFunctional.all_ones(q)] + [EvTailFunctional.dual_basis(i, q) for i in range(1, horizon)]
        return [EvTailFunctional.make([0] * n + [1] * (p + 1), 0, q) for n in range(horizon)]

    def exact_generators(self, horizon: int) -> list[EvTailFunctional]:
        """Generators whose prefix fits inside ``horizon`` (exactly encodable there)."""
        return [g for g in self.generators(horizon) if len(g.prefix) <= horizon]

    def horizon_argument(self) -> str:
        k = self.kind
        if k == "VnPerpChain":
            return "e_k* vanishes on vectors supported below m when k >= m"
        if k == "StandardDualsH":
            return "e_k* vanishes on vectors supported below m when k >= m"
        if k == "LWithAllOnes":
            return "f* is kept whole; e_k* vanishes below m when k >= m"
        return "the window starting at n vanishes below m when n >= m"


def family_perp(fam: FunctionalFamily, m: int) -> list[FinSuppVector]:
    """Basis of ``{v : supp v < m, g(v) = 0 for every generator g}`` (exact)."""
    if m < 1:
        raise PreconditionError("support bound must be >= 1")
    rows = [g.window(m) for g in fam.generators(m)]
    return [FinSuppVector.from_dense(v, fam.q) for v in nullspace(rows, m, fam.q)]


def _poly_divisible(coeffs: list[int], divisor: list[int], q: int) -> bool:
    r = list(coeffs)
    d = len(divisor) - 1
    inv = pow(divisor[-1], q - 2, q)
    for shift in range(len(r) - 1 - d, -1, -1):
        c = r[shift + d] * inv % q
        if c:
            for i, x in enumerate(divisor):
                r[shift + i] = (r[shift + i] - c * x) % q
    return not any(r)


def membership_criterion(f: EvTailFunctional, fam: FunctionalFamily) -> bool:
    """Kind-specific finite test for ``f in span(generators of fam)``."""
    k, p = fam.kind, fam.param
    if f.q != fam.q:
        raise PreconditionError("field mismatch")
    if k == "VnPerpChain":
        return f.tail == 0 and (p is None or len(f.prefix) <= p)
    if k == "StandardDualsH":
        return f.tail == 0 and not any(f.prefix[: p or 0])
    if k == "LWithAllOnes":
        # subtracting tail * f* must leave something in <e_k* | k >= 1>
        return f.value_at(0) == f.tail
    if f.tail:
        return False
    return _poly_divisible(list(f.prefix), [1] * (p + 1), f.q)


def truncated_membership(f: EvTailFunctional, fam: FunctionalFamily, horizon: int) -> bool:
    """Blind row reduction on exact encodings at ``horizon``."""
    rows = [g.encode(horizon) for g in fam.exact_generators(horizon)]
    return in_row_space(rows, f.encode(horizon), fam.q)


def certify_membership(f: EvTailFunctional, fam: FunctionalFamily) -> dict:
    base = max(len(f.prefix), (fam.param or 0) + 1, 1)
    horizons = [base, 2 * base, 3 * base]
    expected = membership_criterion(f, fam)
    blind = {h: truncated_membership(f, fam, h) for h in horizons}
    return {"criterion": expected, "horizons": horizons, "agrees": all(v == expected for v in blind.values())}


def membership_in_family(f: EvTailFunctional, fam: FunctionalFamily) -> bool:
    cert = certify_membership(f, fam)
    if not cert["agrees"]:
        raise AssertionError(f"membership criterion for {fam} disagrees with row reduction on {f}")
    return cert["criterion"]


# ---------------------------------------------------------------------------
# oracle and density probe


def dense_perp_oracle(fam: FunctionalFamily, m: int) -> list[list[int]]:
    """Nullspace via sympy's DomainMatrix; an independent elimination."""
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix

    K = GF(fam.q)
    rows = [[K(x) for x in g.window(m)] for g in fam.generators(m)]
    if not rows:
        return [[int(i == j) for j in range(m)] for i in range(m)]
    N = DomainMatrix(rows, (len(rows), m), K).nullspace()
    return [[int(x) % fam.q for x in row] for row in N.to_Matrix().tolist()] if N.shape[0] else []


def same_span(a, b, q: int) -> bool:
    ra = rref(a, q)[0] if a else []
    rb = rref(b, q)[0] if b else []
    return ra == rb


def density_probe(fam: FunctionalFamily, probes, index_bound: int = 8, max_size: int = 6) -> bool:
    """For every index set S of size <= max_size below ``index_bound`` and every
    probe f, some finite combination of generators agrees with f on S."""
    gens = fam.generators(index_bound)
    for size in range(1, max_size + 1):
        for S in itertools.combinations(range(index_bound), size):
            rows = [[g.value_at(i) for i in S] for g in gens]
            for f in probes:
                if not in_row_space(rows, [f.value_at(i) for i in S], fam.q):
                    return False
    return True


# ---------------------------------------------------------------------------
# the three examples


@dataclass
class GalleryReport:
    example: str
    title: str
    field: int
    bounds: list
    verdicts: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v["holds"] for v in self.verdicts)

    def add(self, name: str, holds: bool, **detail) -> None:
        self.verdicts.append({"name": name, "holds": bool(holds), **detail})

    def to_dict(self) -> dict:
        return {"example": self.example, "title": self.title, "field": self.field,
                "bounds": list(self.bounds), "ok": self.ok,
                "verdicts": self.verdicts, "notes": self.notes}


def _basis_text(vs) -> list[str]:
    return [str(v) for v in vs]


def _example_i(q: int, bounds) -> GalleryReport:
    rep = GalleryReport("i", "perp of an infinite intersection vs sum of perps", q, bounds)
    chain = FunctionalFamily("VnPerpChain", None, q)
    ones = EvTailFunctional.all_ones(q)
    for m in bounds:
        # V_n = (V_n^perp)^perp, so the intersection of all V_n below m is the
        # perp of the whole chain
        inter = family_perp(chain, m)
        rep.add(f"intersection of V_n is 0 at bound {m}", not inter, bound=m,
                basis=_basis_text(inter), horizon=m, exactness=chain.horizon_argument())
        stages = [FunctionalFamily("VnPerpChain", n, q) for n in range(m + 1)]
        refuted = all(eval_functional(ones, FinSuppVector.basis(n.param, q)) != 0 for n in stages)
        rep.add(f"all-ones outside V_n^perp for n <= {m}", refuted and not any(
            membership_in_family(ones, st) for st in stages), bound=m,
            witness="all-ones takes value 1 at e_n, so it is not in V_n^perp")
    cert = certify_membership(ones, chain)
    member = membership_in_family(ones, chain)
    rep.add("all-ones not in the sum of the V_n^perp", not member, witness=str(ones),
            certified_horizons=cert["horizons"],
            exactness="the chain is increasing, so the sum is the union; every stage has tail 0")
    rep.add("strict inclusion: sum of V_n^perp is properly inside (intersection of V_n)^perp = V*",
            not member and all(v["holds"] for v in rep.verdicts))
    return rep


def _example_ii(q: int, bounds) -> GalleryReport:
    rep = GalleryReport("ii", "sum of perps vs perp of intersection for non-closed subspaces", q, bounds)
    H = FunctionalFamily("StandardDualsH", 0, q)
    L = FunctionalFamily("LWithAllOnes", None, q)
    HL = FunctionalFamily("StandardDualsH", 1, q)
    e0 = [FinSuppVector.basis(0, q)]
    # H and L as described intersect in <e_k* | k >= 1>; check on probes
    probes = [EvTailFunctional.dual_basis(i, q) for i in range(4)] + [
        EvTailFunctional.all_ones(q), EvTailFunctional.make([1, 1], 0, q),
        EvTailFunctional.make([0], 1, q), EvTailFunctional.make([1, 0], 1, q),
        EvTailFunctional.make([0, 1, 0], 1, q)]
    agree = all((membership_in_family(f, H) and membership_in_family(f, L)) == membership_in_family(f, HL)
                for f in probes)
    rep.add("H meet L = <e_k* | k >= 1> on probe functionals", agree, probes=[str(f) for f in probes])
    for m in bounds:
        hp, lp, hlp = family_perp(H, m), family_perp(L, m), family_perp(HL, m)
        dense = {name: dense_perp_oracle(fam, m) for name, fam in (("H", H), ("L", L), ("HL", HL))}
        oracle_ok = (same_span([v.dense(m) for v in hp], dense["H"], q)
                     and same_span([v.dense(m) for v in lp], dense["L"], q)
                     and same_span([v.dense(m) for v in hlp], dense["HL"], q))
        triple = (not hp, not lp, [v.dense(m) for v in hlp] == [e0[0].dense(m)])
        rep.add(f"(H^perp, L^perp, (H meet L)^perp) = (0, 0, <e_0>) at bound {m}", all(triple) and oracle_ok,
                bound=m, H_perp=_basis_text(hp), L_perp=_basis_text(lp), HL_perp=_basis_text(hlp),
                dense_oracle_agrees=oracle_ok, horizon=m,
                exactness=[H.horizon_argument(), L.horizon_argument()])
    rep.add("H^perp + L^perp = 0 differs from (H meet L)^perp = <e_0>", all(v["holds"] for v in rep.verdicts))
    return rep


def _example_iii(q: int, bounds, p_max: int) -> GalleryReport:
    rep = GalleryReport("iii", "dense subspaces with zero intersection", q, bounds)
    rep.notes.append(
        "H_p^perp = 0 makes H_p dense in V* (its closure is all of V*), not closed; "
        "the original wording calls it closed, this report treats it as density")
    probes_dense = [EvTailFunctional.dual_basis(0, q), EvTailFunctional.all_ones(q),
                    EvTailFunctional.make([1, 0, 1], 0, q)]
    for p in range(p_max + 1):
        fam = FunctionalFamily("WindowSums", p, q)
        zero = all(not family_perp(fam, m) for m in bounds)
        rep.add(f"H_{p}^perp = 0", zero, p=p, bounds=list(bounds), horizon=max(bounds),
                exactness=fam.horizon_argument())
    for p in (0, 1, 2):
        fam = FunctionalFamily("WindowSums", p, q)
        rep.add(f"H_{p} passes the density probe", density_probe(fam, probes_dense, 8, 6), p=p,
                probes=[str(f) for f in probes_dense])
    samples = [EvTailFunctional.dual_basis(0, q), EvTailFunctional.make([1, 1], 0, q)]
    for f in samples:
        outside = [p for p in range(p_max + 1) if not membership_in_family(f, FunctionalFamily("WindowSums", p, q))]
        rep.add(f"{f} is not in every H_p", bool(outside), functional=str(f),
                first_p_outside=outside[0] if outside else None,
                exactness="a nonzero finite-support f of degree d is not a multiple of 1+z+...+z^p for p > d")
    return rep


def run_example(which: str, q: int = 2, bounds=(8, 16, 32), p_max: int = 8) -> GalleryReport:
    _check_field(q)
    bounds = [int(b) for b in bounds]
    if not bounds or min(bounds) < 1:
        raise PreconditionError("bounds must be positive")
    if p_max < 0:
        raise PreconditionError("p_max must be >= 0")
    if which == "i":
        return _example_i(q, bounds)
    if which == "ii":
        return _example_ii(q, bounds)
    if which == "iii":
        return _example_iii(q, bounds, p_max)
    raise PreconditionError(f"unknown example {which!r}; expected i, ii or iii")
