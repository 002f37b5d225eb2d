"""Exact polynomials in x, y, z, w over F_p or Q, Groebner bases and Hilbert functions.

Coefficients live in a prime field (``char = p``) as integers in ``[0, p)`` or in
the rationals (``char = 0``) as :class:`fractions.Fraction`.  Nothing in here
touches floating point.

The monomial order is graded reverse lexicographic with ``x > y > z > w``.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

DEFAULT_CHAR = 32003
VARS = ("x", "y", "z", "w")
NVARS = 4

Exponent = tuple  # 4-tuple of non-negative ints


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ShapeError(ValueError):
    """Matrix dimensions do not fit the requested operation."""


class GroebnerBudgetError(RuntimeError):
    """A characteristic-zero Groebner run grew past its term budget."""

    def __init__(self, budget: int):
        super().__init__(f"Groebner basis exceeded term budget of {budget} terms")
        self.budget = budget


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_char(char: int) -> int:
    if char != 0 and not is_prime(char):
        raise ValueError(f"characteristic must be 0 or a prime, got {char}")
    return char


def grevlex_key(e: Exponent) -> tuple:
    """Sort key: larger key means larger monomial in grevlex."""
    return (e[0] + e[1] + e[2] + e[3], -e[3], -e[2], -e[1])


def _coerce(c, char: int):
    if char:
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, char) % char
        return int(c) % char
    return Fraction(c)


def _neg_repr(c: int, char: int) -> int:
    """Symmetric representative of a residue, used only for printing."""
    return c - char if c > char // 2 else c


class Poly:
    """Sparse polynomial in x, y, z, w.

    ``terms`` maps exponent 4-tuples to nonzero coefficients.  Instances are
    treated as immutable.
    """

    __slots__ = ("terms", "char", "_hash")

    def __init__(self, terms: dict | None = None, char: int = DEFAULT_CHAR):
        self.char = char
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _coerce(c, char)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, char: int) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p.char = char
        p._hash = None
        return p

    @classmethod
    def zero(cls, char: int = DEFAULT_CHAR) -> "Poly":
        return cls._raw({}, char)

    @classmethod
    def constant(cls, c, char: int = DEFAULT_CHAR) -> "Poly":
        return cls({(0, 0, 0, 0): c}, char)

    @classmethod
    def monomial(cls, e: Exponent, c=1, char: int = DEFAULT_CHAR) -> "Poly":
        return cls({tuple(e): c}, char)

    @classmethod
    def var(cls, name: str, char: int = DEFAULT_CHAR) -> "Poly":
        e = [0, 0, 0, 0]
        e[VARS.index(name)] = 1
        return cls._raw({tuple(e): _coerce(1, char)}, char)

    # -- basic queries ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> float | int:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def lead_exponent(self) -> Exponent:
        return max(self.terms, key=grevlex_key)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if self.char != other.char:
            raise ValueError(f"characteristic mismatch: {self.char} vs {other.char}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.char)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        p = self.char
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(out, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.char
        if p:
            return Poly._raw({e: (p - c) % p for e, c in self.terms.items()}, p)
        return Poly._raw({e: -c for e, c in self.terms.items()}, p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.char
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                out[e] = v
        return Poly._raw({e: c for e, c in out.items() if c}, p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(1, self.char)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.char)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.char == other.char and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.char, frozenset(self.terms.items())))
        return self._hash

    def mul_term(self, e: Exponent, c) -> "Poly":
        p = self.char
        if p:
            return Poly._raw(
                {(a[0] + e[0], a[1] + e[1], a[2] + e[2], a[3] + e[3]): v * c % p for a, v in self.terms.items()},
                p,
            )
        return Poly._raw(
            {(a[0] + e[0], a[1] + e[1], a[2] + e[2], a[3] + e[3]): v * c for a, v in self.terms.items()},
            p,
        )

    def to_char(self, char: int) -> "Poly":
        """Reinterpret coefficients in another characteristic (rationals reduce mod p)."""
        if char == self.char:
            return self
        if self.char:
            raise ValueError(f"cannot move coefficients from F_{self.char} to characteristic {char}")
        return Poly(self.terms, char)

    def evaluate(self, point: Sequence[int], modulus: int | None = None):
        """Value at an integer point; reduced mod ``modulus`` when given."""
        total = 0
        for e, c in self.terms.items():
            if self.char == 0 and isinstance(c, Fraction) and modulus:
                c = c.numerator * pow(c.denominator, -1, modulus)
            t = c
            for xi, k in zip(point, e):
                if k:
                    t = t * (pow(xi, k, modulus) if modulus else xi**k)
            total += t
        return total % modulus if modulus else total

    # -- printing --------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            if self.char:
                c = _neg_repr(c, self.char)
            elif c.denominator == 1:
                c = c.numerator
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(VARS, e) if k
            )
            neg = c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, char={self.char})"


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str, char: int):
        self.text = text
        self.pos = 0
        self.char = char

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        if not self.text.strip():
            raise PolySyntaxError("empty polynomial", 0)
        p = self.expr()
        if self.peek():
            raise PolySyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise PolySyntaxError("expected exponent", start)
            base = base ** int(self.text[start:self.pos])
        return base

    def base(self) -> Poly:
        ch = self.peek()
        start = self.pos
        if not ch:
            raise PolySyntaxError("unexpected end of input", start)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise PolySyntaxError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch == "-":
            self.pos += 1
            return -self.base()
        if ch.isdigit():
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly.constant(int(self.text[start:self.pos]), self.char)
        if ch.isalpha():
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in VARS:
                raise PolySyntaxError(f"unknown variable {name!r}", start)
            return Poly.var(name, self.char)
        raise PolySyntaxError(f"unexpected {ch!r}", start)


def parse_poly(text: str, char: int = DEFAULT_CHAR) -> Poly:
    """Parse ``text`` such as ``"x*w^5 - y*z^5"``; integers are reduced mod ``char``."""
    return _Parser(text, check_char(char)).parse()


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple  # tuple of row tuples of Poly
    char: int = DEFAULT_CHAR

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ShapeError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], char: int = DEFAULT_CHAR) -> "PolyMatrix":
        out = []
        for row in rows:
            out.append(tuple(parse_poly(e, char) if isinstance(e, str) else e.to_char(char) for e in row))
        return cls(tuple(out), char)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(tuple(zip(*self.entries)) if self.entries else (), self.char)

    def to_char(self, char: int) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(e.to_char(char) for e in r) for r in self.entries), char)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def to_strings(self) -> list:
        return [[str(e) for e in r] for r in self.entries]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries)


def matrix_mul(M: PolyMatrix, N: PolyMatrix) -> PolyMatrix:
    if M.cols != N.rows:
        raise ShapeError(f"cannot multiply {M.rows}x{M.cols} by {N.rows}x{N.cols}")
    if M.char != N.char:
        raise ValueError("characteristic mismatch")
    zero = Poly.zero(M.char)
    out = []
    for i in range(M.rows):
        row = []
        for j in range(N.cols):
            acc = zero
            for k in range(M.cols):
                a, b = M.entries[i][k], N.entries[k][j]
                if a.terms and b.terms:
                    acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return PolyMatrix(tuple(out), M.char)


def _det(rows: list) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    char = rows[0][0].char
    total = Poly.zero(char)
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(M: PolyMatrix, k: int) -> list:
    """All k x k minors; row subsets outer, column subsets inner, both lexicographic."""
    if k < 1 or k > min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for {M.rows}x{M.cols} matrix")
    out = []
    for rs in itertools.combinations(range(M.rows), k):
        for cs in itertools.combinations(range(M.cols), k):
            out.append(_det([[M.entries[r][c] for c in cs] for r in rs]))
    return out


# ---------------------------------------------------------------------------
# Groebner bases
#
# Internally monomials are packed as E = e0<<48 | e1<<32 | e2<<16 | e3, which
# makes multiplication integer addition.  Exponents must stay below 2**15.

_SHIFT = 16
_MASK = (1 << _SHIFT) - 1
_GUARD = sum(1 << (15 + _SHIFT * i) for i in range(NVARS))


def _pack(e: Exponent) -> int:
    return (e[0] << 48) | (e[1] << 32) | (e[2] << 16) | e[3]


def _unpack(E: int) -> Exponent:
    return (E >> 48, (E >> 32) & _MASK, (E >> 16) & _MASK, E & _MASK)


def _divides(a: int, b: int) -> bool:
    return ((b | _GUARD) - a) & _GUARD == _GUARD


def _lcm(a: int, b: int) -> int:
    out = 0
    for s in (48, 32, 16, 0):
        out |= max((a >> s) & _MASK, (b >> s) & _MASK) << s
    return out


def _pdeg(E: int) -> int:
    return (E >> 48) + ((E >> 32) & _MASK) + ((E >> 16) & _MASK) + (E & _MASK)


def _key(E: int) -> int:
    # additive integer encoding of grevlex; larger is bigger
    e3 = E & _MASK
    e2 = (E >> 16) & _MASK
    e1 = (E >> 32) & _MASK
    return (_pdeg(E) << 48) - (e3 << 32) - (e2 << 16) - e1


class _GPoly:
    """Monic polynomial in packed form, terms sorted by decreasing grevlex."""

    __slots__ = ("lead", "tail", "deg")

    def __init__(self, terms: list):
        self.lead = terms[0][0]
        self.tail = terms[1:]
        self.deg = _pdeg(self.lead)

    def terms(self) -> list:
        return [(self.lead, 1)] + self.tail


def _normalize(acc: dict, char: int) -> list | None:
    items = sorted(acc.items(), key=lambda t: _key(t[0]), reverse=True)
    if not items:
        return None
    lc = items[0][1]
    if char:
        inv = pow(lc, -1, char)
        return [(E, c * inv % char) for E, c in items]
    return [(E, c / lc) for E, c in items]


def _reduce(acc: dict, basis: list, char: int) -> dict:
    """Fully reduce ``acc`` (packed dict) modulo the monic polynomials in ``basis``."""
    heap = [-_key(E) for E in acc]
    heapq.heapify(heap)
    keymap = {_key(E): E for E in acc}
    out = {}
    while heap:
        k = -heapq.heappop(heap)
        E = keymap.get(k)
        if E is None:
            continue
        c = acc.pop(E, 0)
        if not c:
            continue
        del keymap[k]
        for g in basis:
            if _divides(g.lead, E):
                q = E - g.lead
                for Eg, cg in g.tail:
                    E2 = Eg + q
                    v = acc.get(E2)
                    if v is None:
                        v = -c * cg
                        if char:
                            v %= char
                        acc[E2] = v
                        k2 = _key(E2)
                        keymap[k2] = E2
                        heapq.heappush(heap, -k2)
                    else:
                        v = v - c * cg
                        if char:
                            v %= char
                        if v:
                            acc[E2] = v
                        else:
                            del acc[E2]
                break
        else:
            out[E] = c
    return out


def _to_packed(f: Poly) -> dict:
    return {_pack(e): c for e, c in f.terms.items()}


def _from_packed(terms: Iterable, char: int) -> Poly:
    return Poly._raw({_unpack(E): c for E, c in terms}, char)


def _spoly(f: _GPoly, g: _GPoly, char: int) -> dict:
    L = _lcm(f.lead, g.lead)
    qf, qg = L - f.lead, L - g.lead
    acc: dict = {}
    for E, c in f.tail:
        acc[E + qf] = c
    for E, c in g.tail:
        E2 = E + qg
        v = acc.get(E2, 0) - c
        if char:
            v %= char
        if v:
            acc[E2] = v
        else:
            acc.pop(E2, None)
    return acc


@dataclass(frozen=True)
class Ideal:
    """Homogeneous ideal; ``groebner_basis`` is the reduced grevlex basis once computed.

    ``gb_degree`` is ``None`` for a complete basis, otherwise the degree up to
    which the truncated basis is known to be correct.
    """

    generators: tuple
    char: int = DEFAULT_CHAR
    groebner_basis: tuple | None = field(default=None, compare=False)
    gb_degree: int | None = field(default=None, compare=False)

    @classmethod
    def of(cls, gens: Iterable, char: int | None = None) -> "Ideal":
        gens = [g for g in gens]
        if char is None:
            char = gens[0].char if gens else DEFAULT_CHAR
        gens = tuple(g.to_char(char) if isinstance(g, Poly) else parse_poly(g, char) for g in gens)
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        return cls(gens, char)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    @property
    def leading_exponents(self) -> list:
        if self.groebner_basis is None:
            raise ValueError("Groebner basis not computed")
        return [g.lead_exponent() for g in self.groebner_basis]


def _gb_steps(gens: Sequence[Poly], char: int, max_degree: int | None, term_budget: int | None) -> Iterator:
    """Homogeneous Buchberger, degree by degree.

    Yields ``(d, basis)`` after every S-pair of degree ``d`` has been processed;
    ``basis`` is then a Groebner basis up to degree ``d``.  Pairs are pruned with
    the Gebauer-Moeller criteria and selected by (lcm degree, j, i).
    """
    basis: list = []
    alive: list = []
    pairs: dict = {}  # (i, j) -> lcm

    def add(h: _GPoly):
        nonlocal pairs
        t = len(basis)
        basis.append(h)
        alive.append(True)
        lcms = {i: _lcm(basis[i].lead, h.lead) for i in range(t) if alive[i]}
        # criterion B: drop old pairs whose lcm is divisible by lm(h), strictly beyond both lcms
        kept = {}
        for (i, j), L in pairs.items():
            if (
                _divides(h.lead, L)
                and _lcm(basis[i].lead, h.lead) != L
                and _lcm(basis[j].lead, h.lead) != L
            ):
                continue
            kept[(i, j)] = L
        # criteria M and F over the new pairs
        cand = sorted(lcms.items(), key=lambda t: (_key(t[1]), t[0]))
        chosen: dict = {}
        for i, L in cand:
            if any(_divides(L2, L) and L2 != L for L2 in lcms.values()):
                continue
            if L in chosen.values():
                continue
            chosen[i] = L
        for i, L in chosen.items():
            # product criterion: coprime leads
            if L == basis[i].lead + h.lead:
                continue
            kept[(i, t)] = L
        for i in range(t):
            if alive[i] and _divides(h.lead, basis[i].lead):
                alive[i] = False
        pairs = kept

    pending = []
    for g in gens:
        if g.is_zero():
            continue
        if g.char != char:
            g = g.to_char(char)
        pending.append(g)
    pending.sort(key=lambda g: sum(next(iter(g.terms))))
    by_degree: dict = {}
    for g in pending:
        by_degree.setdefault(sum(next(iter(g.terms))), []).append(g)

    def total_terms():
        return sum(1 + len(b.tail) for b in basis)

    degrees = set(by_degree)
    d = min(degrees) if degrees else None
    while True:
        pair_degrees = {_pdeg(L) for L in pairs.values()}
        todo = degrees | pair_degrees
        if not todo:
            break
        d = min(todo)
        if max_degree is not None and d > max_degree:
            return
        live = [b for k, b in enumerate(basis) if alive[k]]
        # generators of this degree
        for g in by_degree.pop(d, []):
            r = _reduce(_to_packed(g), live, char)
            norm = _normalize(r, char)
            if norm:
                add(_GPoly(norm))
                live = [b for k, b in enumerate(basis) if alive[k]]
        degrees.discard(d)
        while True:
            current = sorted(((j, i) for (i, j), L in pairs.items() if _pdeg(L) == d))
            if not current:
                break
            j, i = current[0]
            del pairs[(i, j)]
            s = _spoly(basis[i], basis[j], char)
            r = _reduce(s, live, char)
            norm = _normalize(r, char)
            if norm:
                add(_GPoly(norm))
                live = [b for k, b in enumerate(basis) if alive[k]]
                if term_budget is not None and total_terms() > term_budget:
                    raise GroebnerBudgetError(term_budget)
        yield d, [b for k, b in enumerate(basis) if alive[k]]
    yield None, [b for k, b in enumerate(basis) if alive[k]]


def _interreduce(basis: list, char: int) -> list:
    basis = sorted(basis, key=lambda g: _key(g.lead))
    minimal = [g for g in basis if not any(h is not g and _divides(h.lead, g.lead) for h in basis)]
    out = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = _reduce(dict(g.tail), others, char)
        tail[g.lead] = 1 if char else Fraction(1)
        out.append(_GPoly(_normalize(tail, char)))
    return sorted(out, key=lambda g: _key(g.lead))


def buchberger(I: Ideal, max_degree: int | None = None, term_budget: int | None = 200_000) -> Ideal:
    """Reduced grevlex Groebner basis of ``I``.

    With ``max_degree`` the basis is truncated: it is correct in all degrees up to
    ``max_degree``.  ``term_budget`` only applies in characteristic 0.
    """
    budget = term_budget if I.char == 0 else None
    last = None
    complete = True
    for d, basis in _gb_steps(I.generators, I.char, max_degree, budget):
        last = basis
        if d is None:
            break
    else:
        complete = False
    pending_pairs_remain = max_degree is not None and not complete
    reduced = _interreduce(last or [], I.char)
    gb = tuple(_from_packed(g.terms(), I.char) for g in reduced)
    return Ideal(I.generators, I.char, gb, max_degree if pending_pairs_remain else None)


def groebner_steps(I: Ideal) -> Iterator:
    """Yield ``(d, lead_exponents)`` once the basis is known correct through degree ``d``."""
    for d, basis in _gb_steps(I.generators, I.char, None, 200_000 if I.char == 0 else None):
        yield d, [_unpack(g.lead) for g in basis]


def normal_form(f: Poly, I: Ideal | Sequence[Poly]) -> Poly:
    gb = I.groebner_basis if isinstance(I, Ideal) else tuple(I)
    if gb is None:
        raise ValueError("Groebner basis not computed")
    char = f.char
    gs = []
    for g in gb:
        norm = _normalize(_to_packed(g), char)
        if norm:
            gs.append(_GPoly(norm))
    return _from_packed(_reduce(_to_packed(f), gs, char).items(), char)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    char = f.char
    F = _GPoly(_normalize(_to_packed(f), char))
    G = _GPoly(_normalize(_to_packed(g), char))
    return _from_packed(_spoly(F, G, char).items(), char)


# ---------------------------------------------------------------------------
# Hilbert functions and emptiness


def monomials(d: int) -> list:
    """Exponents of degree ``d`` in decreasing grevlex order."""
    if d < 0:
        return []
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            for c in range(d - a - b, -1, -1):
                out.append((a, b, c, d - a - b - c))
    out.sort(key=grevlex_key, reverse=True)
    return out


def count_standard(leads: Sequence[Exponent], d: int) -> int:
    """Number of degree-d monomials divisible by none of ``leads``."""
    if d < 0:
        return 0
    packed = [_pack(e) for e in leads if sum(e) <= d]
    if not packed:
        return comb(d + 3, 3)
    n = 0
    for e in monomials(d):
        E = _pack(e)
        if not any(_divides(L, E) for L in packed):
            n += 1
    return n


def hilbert_function(I: Ideal, d: int) -> int:
    """dim of the degree-d part of S/I, counted by standard monomials."""
    if d < 0:
        return 0
    if I.groebner_basis is None:
        raise ValueError("Groebner basis not computed")
    if I.gb_degree is not None and d > I.gb_degree:
        raise ValueError(f"basis only valid through degree {I.gb_degree}")
    return count_standard(I.leading_exponents, d)


@dataclass(frozen=True)
class Verdict:
    """Outcome of the projective emptiness test.

    ``kind`` is ``"empty"`` (with the first degree where the Hilbert function
    vanishes), ``"nonempty"`` (with a witness point) or ``"undecided"``.
    """

    kind: str
    degree: int | None = None
    witness: tuple | None = None

    @property
    def empty(self) -> bool:
        return self.kind == "empty"

    @property
    def undecided(self) -> bool:
        return self.kind == "undecided"

    def __str__(self) -> str:
        if self.kind == "empty":
            return f"Empty({self.degree})"
        if self.kind == "nonempty":
            return f"NonemptyAtCap(witness={list(self.witness)})"
        return "Undecided"


def projective_points(q: int, coords: Sequence[int] | None = None) -> Iterator[tuple]:
    """Points of P^3 with first nonzero coordinate 1; coordinates from ``coords`` or F_q."""
    vals = list(range(q)) if coords is None else list(coords)
    for lead in range(NVARS):
        for rest in itertools.product(vals, repeat=NVARS - 1 - lead):
            yield (0,) * lead + (1,) + rest


def common_zeros(polys: Sequence[Poly], q: int) -> list:
    """All points of P^3(F_q) where every polynomial vanishes (q prime)."""
    return [pt for pt in projective_points(q) if all(f.evaluate(pt, q) == 0 for f in polys)]


def _find_witness(gens: Sequence[Poly], char: int) -> tuple | None:
    box = (0, 1, -1, 2, -2)
    for pt in projective_points(char or 0, box):
        if char:
            if all(f.evaluate([v % char for v in pt], char) == 0 for f in gens):
                return pt
        elif all(f.evaluate(pt) == 0 for f in gens):
            return pt
    return None


def default_degree_cap(max_entry_degree: int) -> int:
    return 4 * max_entry_degree + 8


def empty_projective_zero_locus(I: Ideal, degree_cap: int | None = None) -> Verdict:
    """Decide whether V(I) in P^3 is empty by Hilbert function vanishing.

    The Hilbert function of a homogeneous ideal that vanishes in degree d
    vanishes in every higher degree, so the first such d is a certificate.
    """
    gens = [g for g in I.generators if not g.is_zero()]
    if not gens:
        return Verdict("nonempty", witness=(1, 0, 0, 0))
    if degree_cap is None:
        degree_cap = default_degree_cap(max(int(g.degree) for g in gens))
    start = 0
    for d, leads in groebner_steps(Ideal(tuple(gens), I.char)):
        top = degree_cap if d is None else min(d, degree_cap)
        for e in range(start, top + 1):
            if count_standard(leads, e) == 0:
                return Verdict("empty", degree=e)
        start = top + 1
        if d is None or d >= degree_cap:
            break
    witness = _find_witness(gens, I.char)
    if witness is not None:
        return Verdict("nonempty", witness=witness)
    return Verdict("undecided")


# ---------------------------------------------------------------------------
# linear algebra over the coefficient field


@dataclass(frozen=True)
class FieldMatrix:
    """Sparse matrix over F_p or Q stored by columns (``cols[j]`` maps row -> value)."""

    nrows: int
    ncols: int
    cols: tuple
    char: int = DEFAULT_CHAR

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], char: int = DEFAULT_CHAR) -> "FieldMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = []
        for j in range(ncols):
            col = {}
            for i in range(nrows):
                v = _coerce(rows[i][j], char)
                if v:
                    col[i] = v
            cols.append(col)
        return cls(nrows, ncols, tuple(cols), char)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out


def rank_over_field(M: FieldMatrix) -> int:
    """Rank by sparse Gaussian elimination on the columns."""
    p = M.char
    pivots: dict = {}
    for col in M.cols:
        v = dict(col)
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                c = v[lead]
                if p:
                    inv = pow(c, -1, p)
                    pivots[lead] = {i: x * inv % p for i, x in v.items()}
                else:
                    pivots[lead] = {i: x / c for i, x in v.items()}
                break
            c = v[lead]
            for i, x in piv.items():
                y = v.get(i, 0) - c * x
                if p:
                    y %= p
                if y:
                    v[i] = y
                else:
                    v.pop(i, None)
    return len(pivots)
