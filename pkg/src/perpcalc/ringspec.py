"""Textual ring specifications.

Grammar (ASCII, whitespace-insensitive)::

    spec := "zmod" INT
          | "gf" PRIME INT [POLY]          (POLY may be omitted when INT = 1)
          | "quot" spec ["[" VAR ("," VAR)* "]" "/"] "(" POLY ("," POLY)* ")"
          | "tri" INT "over" spec
          | "mat" INT "over" spec
          | "prod" "(" spec ("," spec)+ ")"

``gf2``, ``gf3`` ... and ``zmod4`` ... are accepted as shorthands for
``gf 2 1`` and ``zmod 4``.  Polynomials use single-letter variables, caret
powers, optional ``*`` and integer coefficients, e.g. ``x^2+x+1`` or ``xy``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import SpecSemanticError, SpecSyntaxError

Poly = dict  # {exponent tuple: integer coefficient}


@dataclass(frozen=True)
class RingSpec:
    kind: str
    params: tuple

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "zmod":
            return f"zmod {p[0]}"
        if k == "gf":
            if p[1] == 1 and p[2] == "x":
                return f"gf {p[0]} 1"
            return f"gf {p[0]} {p[1]} {p[2]}"
        if k == "quot":
            base, variables, polys = p
            return f"quot {base} [{','.join(variables)}]/({','.join(polys)})"
        if k in ("tri", "mat"):
            return f"{k} {p[0]} over {p[1]}"
        if k == "prod":
            return "prod (" + ", ".join(str(s) for s in p) + ")"
        raise AssertionError(k)


# ---------------------------------------------------------------------------
# polynomials

_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(text: str, variables: tuple[str, ...]) -> Poly:
    """Parse ``text`` into ``{exponents: coefficient}`` with integer coefficients."""
    s = text.replace(" ", "")
    if not s:
        raise SpecSyntaxError(f"empty polynomial", text, 0)
    out: Poly = {}
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise SpecSyntaxError(f"bad polynomial {text!r}", text, pos)
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff, exps = _parse_term(m.group(2), variables, text, m.start(2))
        out[exps] = out.get(exps, 0) + sign * coeff
    if pos != len(s):
        raise SpecSyntaxError(f"bad polynomial {text!r}", text, pos)
    return {e: c for e, c in out.items() if c != 0}


def _parse_term(term: str, variables, text, offset):
    exps = [0] * len(variables)
    m = re.match(r"\d+", term)
    coeff = 1
    i = 0
    if m:
        coeff = int(m.group())
        i = m.end()
    while i < len(term):
        ch = term[i]
        if ch == "*":
            i += 1
            continue
        if ch not in variables:
            raise SpecSyntaxError(f"unknown variable {ch!r} in {text!r}", text, offset + i)
        i += 1
        power = 1
        if i < len(term) and term[i] == "^":
            m = re.match(r"\d+", term[i + 1:])
            if not m:
                raise SpecSyntaxError(f"missing exponent in {text!r}", text, offset + i)
            power = int(m.group())
            i += 1 + m.end()
        exps[variables.index(ch)] += power
    return coeff, tuple(exps)


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_divides_mod_p(g: list[int], f: list[int], p: int) -> bool:
    """True iff monic ``g`` divides ``f`` over Z/p (coefficient lists, low degree first)."""
    r = list(f)
    dg = len(g) - 1
    for shift in range(len(r) - 1 - dg, -1, -1):
        c = r[shift + dg] % p
        if c:
            for i, gi in enumerate(g):
                r[shift + i] = (r[shift + i] - c * gi) % p
    return not any(x % p for x in r)


def univariate_coeffs(poly: Poly, p: int) -> list[int]:
    deg = max((e[0] for e in poly), default=0)
    coeffs = [0] * (deg + 1)
    for e, c in poly.items():
        coeffs[e[0]] = c % p
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def is_irreducible_mod_p(coeffs: list[int], p: int) -> bool:
    """Exhaustive factor search: no monic divisor of degree 1..deg/2."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_divides_mod_p(list(low) + [1], coeffs, p):
                return False
    return True


# ---------------------------------------------------------------------------
# tokenizer / recursive descent

_TOKEN = re.compile(r"\s*(?:([()\[\],/])|([A-Za-z0-9^*+\-]+))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        tok = m.group(1) or m.group(2)
        tokens.append((tok, m.end() - len(tok)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def next(self, what: str = "token") -> str:
        if self.i >= len(self.tokens):
            raise SpecSyntaxError(f"expected {what}, got end of input", self.text, len(self.text))
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, lit: str) -> None:
        at = self.pos()
        tok = self.next(repr(lit))
        if tok != lit:
            raise SpecSyntaxError(f"expected {lit!r}, got {tok!r}", self.text, at)

    def integer(self, what: str) -> int:
        at = self.pos()
        tok = self.next(what)
        if not tok.isdigit():
            raise SpecSyntaxError(f"expected {what}, got {tok!r}", self.text, at)
        return int(tok)

    def poly_text(self) -> str:
        """Consume a polynomial, joining pieces split by whitespace around +/-."""
        at = self.pos()
        parts = [self.next("polynomial")]
        if parts[0] in "()[],/":
            raise SpecSyntaxError(f"expected polynomial, got {parts[0]!r}", self.text, at)
        while True:
            nxt = self.peek()
            if nxt is None or nxt in "()[],/":
                break
            if parts[-1][-1] in "+-" or nxt[0] in "+-":
                parts.append(self.next())
            else:
                break
        return "".join(parts)

    def spec(self) -> RingSpec:
        at = self.pos()
        word = self.next("ring kind")
        m = re.fullmatch(r"(zmod|gf)(\d+)", word)
        if m:
            if m.group(1) == "zmod":
                return self._zmod(int(m.group(2)), at)
            return self._gf(int(m.group(2)), 1, None, at)
        if word == "zmod":
            return self._zmod(self.integer("modulus"), at)
        if word == "gf":
            p = self.integer("characteristic")
            k = self.integer("degree")
            poly = None
            nxt = self.peek()
            if nxt is not None and nxt not in "()[],/" and nxt != "over" and re.search(r"[a-z]", nxt):
                poly = self.poly_text()
            return self._gf(p, k, poly, at)
        if word == "quot":
            base = self.spec()
            variables = ("x",)
            if self.peek() == "[":
                self.next()
                names = []
                while True:
                    vat = self.pos()
                    v = self.next("variable")
                    if not re.fullmatch(r"[a-z]", v):
                        raise SpecSyntaxError(f"variables are single letters, got {v!r}", self.text, vat)
                    names.append(v)
                    if self.peek() == ",":
                        self.next()
                        continue
                    self.expect("]")
                    break
                variables = tuple(names)
                if len(set(variables)) != len(variables):
                    raise SpecSemanticError("repeated variable in quot")
                if self.peek() == "/":
                    self.next()
            self.expect("(")
            polys = []
            while True:
                pat = self.pos()
                ptxt = self.poly_text()
                poly = parse_poly(ptxt, variables)
                if not poly:
                    raise SpecSemanticError(f"quotient polynomial {ptxt!r} is zero (position {pat})")
                polys.append(ptxt)
                if self.peek() == ",":
                    self.next()
                    continue
                self.expect(")")
                break
            return RingSpec("quot", (base, variables, tuple(polys)))
        if word in ("tri", "mat"):
            m_ = self.integer("matrix size")
            if m_ < 1:
                raise SpecSemanticError(f"{word}: matrix size must be >= 1")
            self.expect("over")
            return RingSpec(word, (m_, self.spec()))
        if word == "prod":
            self.expect("(")
            parts = [self.spec()]
            while self.peek() == ",":
                self.next()
                parts.append(self.spec())
            self.expect(")")
            if len(parts) < 2:
                raise SpecSyntaxError("prod needs at least two factors", self.text, at)
            return RingSpec("prod", tuple(parts))
        raise SpecSyntaxError(f"unknown ring kind {word!r}", self.text, at)

    def _zmod(self, n: int, at: int) -> RingSpec:
        if n < 2:
            raise SpecSemanticError(f"zmod modulus must be >= 2, got {n}")
        return RingSpec("zmod", (n,))

    def _gf(self, p: int, k: int, poly: str | None, at: int) -> RingSpec:
        if not is_prime(p):
            raise SpecSemanticError(f"gf characteristic {p} is not prime")
        if k < 1:
            raise SpecSemanticError("gf degree must be >= 1")
        if poly is None:
            if k != 1:
                raise SpecSemanticError(f"gf {p} {k} needs an explicit irreducible polynomial")
            poly = "x"
        coeffs = univariate_coeffs(parse_poly(poly, ("x",)), p)
        if len(coeffs) - 1 != k:
            raise SpecSemanticError(f"gf polynomial {poly!r} has degree {len(coeffs) - 1}, expected {k}")
        if not is_irreducible_mod_p(coeffs, p):
            raise SpecSemanticError(f"gf polynomial {poly!r} is reducible over Z/{p}")
        return RingSpec("gf", (p, k, poly))


def parse_ring_spec(text: str) -> RingSpec:
    """Parse a ring spec string; raises SpecSyntaxError / SpecSemanticError."""
    parser = _Parser(text)
    spec = parser.spec()
    if parser.peek() is not None:
        raise SpecSyntaxError(f"trailing input {parser.peek()!r}", text, parser.pos())
    return spec
