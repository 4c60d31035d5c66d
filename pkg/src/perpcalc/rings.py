"""Finite unital rings as explicit addition/multiplication tables.

Every ring has its elements indexed ``0..order-1`` with index 0 the zero.
The index order is fixed by the constructor (see :func:`build_ring`) and is
the total order all canonical forms downstream are built on.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import GuardExceeded, SpecSemanticError, SpecSyntaxError
from .ringspec import RingSpec, is_prime, parse_poly, parse_ring_spec, univariate_coeffs

DEFAULT_MAX_RING_ORDER = 256


# ---------------------------------------------------------------------------
# element literals


def split_literal(text: str) -> list[str]:
    """Split ``"(a (b c) d)"`` into ``["a", "(b c)", "d"]``."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise SpecSyntaxError(f"expected parenthesized literal, got {text!r}", text, 0)
    s = s[1:-1]
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch.isspace() and depth == 0:
            if cur:
                parts.append("".join(cur))
                cur = []
            continue
        cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


class ZmodCodec:
    def __init__(self, n: int):
        self.n = n

    def format(self, i: int) -> str:
        return str(i)

    def parse(self, text: str) -> int:
        t = text.strip()
        if not re.fullmatch(r"-?\d+", t):
            raise SpecSyntaxError(f"expected integer literal, got {text!r}", text, 0)
        return int(t) % self.n


class PolyCodec:
    """Elements of a polynomial quotient over an integer-coefficient base."""

    def __init__(self, q: int, variables, basis, normal_form):
        self.q = q
        self.variables = variables
        self.basis = basis
        self.normal_form = normal_form  # Poly -> coefficient list over basis

    def _monomial(self, exps) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "".join(parts)

    def format(self, i: int) -> str:
        coeffs = []
        for _ in self.basis:
            coeffs.append(i % self.q)
            i //= self.q
        terms = []
        for c, exps in sorted(zip(coeffs, self.basis), key=lambda t: (-sum(t[1]), tuple(-e for e in t[1]))):
            if c == 0:
                continue
            mono = self._monomial(exps)
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text: str) -> int:
        coeffs = self.normal_form(parse_poly(text, self.variables))
        return sum(c * self.q**j for j, c in enumerate(coeffs))


class EntryCodec:
    """Row-major entry tuples (tri/mat) or component tuples (prod)."""

    def __init__(self, codecs: list, radices: list[int]):
        self.codecs = codecs
        self.radices = radices

    def digits(self, i: int) -> list[int]:
        out = []
        for r in reversed(self.radices):
            out.append(i % r)
            i //= r
        return out[::-1]

    def format(self, i: int) -> str:
        return "(" + " ".join(c.format(d) for c, d in zip(self.codecs, self.digits(i))) + ")"

    def parse(self, text: str) -> int:
        parts = split_literal(text)
        if len(parts) != len(self.codecs):
            raise SpecSyntaxError(f"expected {len(self.codecs)} entries in {text!r}", text, 0)
        idx = 0
        for c, r, p in zip(self.codecs, self.radices, parts):
            idx = idx * r + c.parse(p)
        return idx


# ---------------------------------------------------------------------------


@dataclass(eq=False)
class FiniteRing:
    """Finite unital ring given by full tables over element indices."""

    add: np.ndarray
    mul: np.ndarray
    one: int
    name: str
    codec: object = field(repr=False)
    _opposite: "FiniteRing | None" = field(default=None, repr=False)

    def __post_init__(self):
        self.add = np.ascontiguousarray(self.add, dtype=np.int32)
        self.mul = np.ascontiguousarray(self.mul, dtype=np.int32)
        self.add.setflags(write=False)
        self.mul.setflags(write=False)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @cached_property
    def neg(self) -> np.ndarray:
        zero_pos = np.argmax(self.add == 0, axis=1)
        return zero_pos.astype(np.int32)

    @cached_property
    def commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.int64(self.order).tobytes())
        h.update(np.int64(self.one).tobytes())
        h.update(self.add.tobytes())
        h.update(self.mul.tobytes())
        return h.hexdigest()[:16]

    def format(self, i: int) -> str:
        return self.codec.format(int(i))

    def parse(self, text: str) -> int:
        return self.codec.parse(text)

    def opposite(self) -> "FiniteRing":
        return opposite_ring(self)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, order={self.order})"


def opposite_ring(ring: FiniteRing) -> FiniteRing:
    """Same additive group, multiplication ``a*b := b*a``.

    The opposite of the opposite is the original object, so caches keyed on
    ring identity survive the round trip.
    """
    if ring._opposite is None:
        op = FiniteRing(ring.add, ring.mul.T, ring.one, f"op({ring.name})", ring.codec)
        op._opposite = ring
        ring._opposite = op
    return ring._opposite


# ---------------------------------------------------------------------------
# constructors


def _zmod(n: int, name: str) -> FiniteRing:
    a = np.arange(n)
    return FiniteRing((a[:, None] + a[None, :]) % n, (a[:, None] * a[None, :]) % n, 1 % n, name, ZmodCodec(n))


def _poly_ring(base: FiniteRing, basis, structure, name, codec) -> FiniteRing:
    """Free base-module on ``basis`` with multiplication given by structure constants.

    ``structure[i, j]`` is the coefficient vector (base indices) of
    ``basis[i] * basis[j]``; the base must be commutative.
    """
    q, d = base.order, len(basis)
    order = q**d
    idx = np.arange(order)
    digits = np.stack([(idx // q**j) % q for j in range(d)], axis=1)
    weights = q ** np.arange(d)
    add = base.add[digits[:, None, :], digits[None, :, :]] @ weights
    acc = np.zeros((order, order, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            cij = base.mul[digits[:, None, i], digits[None, :, j]]
            for k in range(d):
                s = structure[i, j, k]
                if s:
                    acc[:, :, k] = base.add[acc[:, :, k], base.mul[cij, s]]
    mul = acc @ weights
    return FiniteRing(add, mul, 1, name, codec)


def _gf(p: int, k: int, poly_text: str, name: str) -> FiniteRing:
    base = _zmod(p, f"zmod {p}")
    f = univariate_coeffs(parse_poly(poly_text, ("x",)), p)
    inv_lead = pow(f[-1], -1, p)
    f = [(c * inv_lead) % p for c in f]

    def normal_form(poly) -> list[int]:
        coeffs = univariate_coeffs(poly, p) if poly else [0]
        r = coeffs + [0] * max(0, k - len(coeffs))
        for top in range(len(r) - 1, k - 1, -1):
            c = r[top]
            if c:
                for i in range(k + 1):
                    r[top - k + i] = (r[top - k + i] - c * f[i]) % p
        return [x % p for x in r[:k]]

    basis = [(j,) for j in range(k)]
    structure = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            structure[i, j] = normal_form({(i + j,): 1})
    return _poly_ring(base, basis, structure, name, PolyCodec(p, ("x",), basis, normal_form))


def _quot(spec: RingSpec, base: FiniteRing, max_order: int, name: str) -> FiniteRing:
    base_spec, variables, poly_texts = spec.params
    if base_spec.kind == "gf" and base_spec.params[1] == 1:
        q = base_spec.params[0]
    elif base_spec.kind == "zmod":
        q = base_spec.params[0]
    else:
        raise SpecSemanticError("quot base must be zmod n or a prime field gf p 1")
    polys = [parse_poly(t, variables) for t in poly_texts]
    if is_prime(q):
        basis, normal_form = _groebner_basis(polys, variables, q)
    else:
        if len(variables) != 1 or len(polys) != 1:
            raise SpecSemanticError("quot over composite zmod supports one monic univariate polynomial")
        basis, normal_form = _monic_division_basis(polys[0], q)
    if q ** len(basis) > max_order:
        raise GuardExceeded(f"ring order {q}^{len(basis)} exceeds guard {max_order}")
    d = len(basis)
    structure = np.zeros((d, d, d), dtype=np.int64)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            structure[i, j] = normal_form({tuple(a + b for a, b in zip(bi, bj)): 1})
    return _poly_ring(base, basis, structure, name, PolyCodec(q, variables, basis, normal_form))


def _basis_order(exps):
    # degree first, then x before y before ...
    return (sum(exps), tuple(-e for e in exps))


def _groebner_basis(polys, variables, p):
    import sympy

    gens = sympy.symbols(variables)

    def to_expr(poly):
        return sum(c * sympy.prod([g**e for g, e in zip(gens, exps)]) for exps, c in poly.items())

    G = sympy.groebner([to_expr(f) for f in polys], *gens, modulus=p, order="grevlex")
    if any(g.is_number for g in G.exprs):
        raise SpecSemanticError("quotient is the zero ring")
    leads = [sympy.Poly(g, *gens, modulus=p).monoms(order="grevlex")[0] for g in G.exprs]
    nv = len(variables)
    for i in range(nv):
        if not any(all(e == 0 for j, e in enumerate(lm) if j != i) and lm[i] > 0 for lm in leads):
            raise SpecSemanticError(f"quotient ring is infinite (no pure power of {variables[i]} in the ideal)")
    bound = [min(lm[i] for lm in leads if all(e == 0 for j, e in enumerate(lm) if j != i) and lm[i] > 0)
             for i in range(nv)]
    basis = [
        exps for exps in itertools.product(*[range(b) for b in bound])
        if not any(all(e >= l for e, l in zip(exps, lm)) for lm in leads)
    ]
    basis.sort(key=_basis_order)
    pos = {b: j for j, b in enumerate(basis)}

    def normal_form(poly) -> list[int]:
        out = [0] * len(basis)
        if not poly:
            return out
        _, rem = G.reduce(to_expr(poly))
        if rem == 0:
            return out
        for exps, c in sympy.Poly(rem, *gens, modulus=p).as_dict().items():
            out[pos[exps]] = int(c) % p
        return out

    return basis, normal_form


def _monic_division_basis(poly, n):
    f = [c % n for c in univariate_coeffs(poly, 10**18)]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    if f[-1] != 1:
        raise SpecSemanticError("quot over composite zmod needs a monic polynomial")
    d = len(f) - 1
    if d < 1:
        raise SpecSemanticError("quotient is the zero ring")

    def normal_form(p) -> list[int]:
        if not p:
            return [0] * d
        r = [c % n for c in univariate_coeffs(p, 10**18)]
        r += [0] * max(0, d - len(r))
        for top in range(len(r) - 1, d - 1, -1):
            c = r[top]
            if c:
                for i in range(d + 1):
                    r[top - d + i] = (r[top - d + i] - c * f[i]) % n
        return [x % n for x in r[:d]]

    return [(j,) for j in range(d)], normal_form


def _matrix_ring(base: FiniteRing, m: int, upper_only: bool, name: str) -> FiniteRing:
    positions = [(i, j) for i in range(m) for j in range(m) if not upper_only or j >= i]
    T, q = len(positions), base.order
    order = q**T
    idx = np.arange(order)
    weights = q ** np.arange(T - 1, -1, -1)
    digits = np.stack([(idx // w) % q for w in weights], axis=1)
    add = base.add[digits[:, None, :], digits[None, :, :]] @ weights
    slot = {pq: t for t, pq in enumerate(positions)}
    prod = np.zeros((order, order, T), dtype=np.int64)
    for (i, k), t in slot.items():
        for j in range(m):
            if (i, j) in slot and (j, k) in slot:
                term = base.mul[digits[:, None, slot[i, j]], digits[None, :, slot[j, k]]]
                prod[:, :, t] = base.add[prod[:, :, t], term]
    mul = prod @ weights
    one_digits = [base.one if i == j else 0 for i, j in positions]
    one = int(np.dot(one_digits, weights))
    return FiniteRing(add, mul, one, name, EntryCodec([base.codec] * T, [q] * T))


def _product_ring(parts: list[FiniteRing], name: str) -> FiniteRing:
    radices = [r.order for r in parts]
    order = int(np.prod(radices))
    idx = np.arange(order)
    weights = [int(np.prod(radices[i + 1:])) for i in range(len(parts))]
    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    one = 0
    for r, w in zip(parts, weights):
        d = (idx // w) % r.order
        add += r.add[d[:, None], d[None, :]] * w
        mul += r.mul[d[:, None], d[None, :]] * w
        one += r.one * w
    return FiniteRing(add, mul, one, name, EntryCodec([r.codec for r in parts], radices))


def predicted_order(spec: RingSpec) -> int | None:
    """Order implied by the spec without building (None for quot)."""
    k, p = spec.kind, spec.params
    if k == "zmod":
        return p[0]
    if k == "gf":
        return p[0] ** p[1]
    if k in ("tri", "mat"):
        base = predicted_order(p[1])
        if base is None:
            return None
        m = p[0]
        return base ** (m * (m + 1) // 2 if k == "tri" else m * m)
    if k == "prod":
        orders = [predicted_order(s) for s in p]
        return None if None in orders else int(np.prod(orders))
    return None


def build_ring(spec: RingSpec | str, max_order: int = DEFAULT_MAX_RING_ORDER) -> FiniteRing:
    """Construct the ring described by ``spec``.

    Raises GuardExceeded when the order would exceed ``max_order``.
    """
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    expected = predicted_order(spec)
    if expected is not None and expected > max_order:
        raise GuardExceeded(f"ring order {expected} exceeds guard {max_order}")
    name = str(spec)
    k, p = spec.kind, spec.params
    if k == "zmod":
        return _zmod(p[0], name)
    if k == "gf":
        return _gf(p[0], p[1], p[2], name)
    if k == "quot":
        base = build_ring(p[0], max_order)
        return _quot(spec, base, max_order, name)
    if k in ("tri", "mat"):
        base = build_ring(p[1], max_order)
        return _matrix_ring(base, p[0], k == "tri", name)
    if k == "prod":
        return _product_ring([build_ring(s, max_order) for s in p], name)
    raise SpecSemanticError(f"unknown ring kind {k!r}")


# ---------------------------------------------------------------------------
# audit


@dataclass
class AuditReport:
    order: int
    counts: dict
    violations: list  # (axiom, (a, b, c)) samples, at most `sample_limit` per axiom

    @property
    def ok(self) -> bool:
        return not any(self.counts.values())


def ring_axiom_audit(ring: FiniteRing, sample_limit: int = 10) -> AuditReport:
    """Check every ring axiom on the full universe."""
    A, M = ring.add, ring.mul
    n = ring.order
    e = np.arange(n)
    counts: dict[str, int] = {}
    samples: list = []

    def record(axiom: str, bad: np.ndarray, fmt):
        idx = np.argwhere(bad)
        counts[axiom] = counts.get(axiom, 0) + len(idx)
        have = sum(1 for s in samples if s[0] == axiom)
        for row in idx[: max(0, sample_limit - have)]:
            samples.append((axiom, fmt(row)))

    record("add_commutative", A != A.T, lambda r: (int(r[0]), int(r[1]), None))
    record("add_identity", A[0] != e, lambda r: (0, int(r[0]), None))
    record("add_inverse", ~(A == 0).any(axis=1), lambda r: (int(r[0]), None, None))
    record("mul_identity_left", M[ring.one] != e, lambda r: (ring.one, int(r[0]), None))
    record("mul_identity_right", M[:, ring.one] != e, lambda r: (int(r[0]), ring.one, None))
    for a in range(n):
        fmt = lambda r, a=a: (a, int(r[0]), int(r[1]))
        record("add_associative", A[A[a]] != A[a][A], fmt)
        record("mul_associative", M[M[a]] != M[a][M], fmt)
        record("left_distributive", M[a][A] != A[M[a][:, None], M[a][None, :]], fmt)
        # (b + c) a = b a + c a, indexed as (a; b, c)
        record("right_distributive", M[:, a][A] != A[M[:, a][:, None], M[:, a][None, :]], fmt)
    return AuditReport(n, counts, samples)
