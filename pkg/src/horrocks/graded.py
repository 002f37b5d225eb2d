"""Monads of sums of line bundles on P^3 and the cohomology of their bundles.

A monad ``A --alpha--> B --beta--> C`` is given by three degree lists and two
polynomial matrices.  All dimensions come from ranks of maps on graded pieces
of global sections; since A, B, C are sums of line bundles this is enough:

    h0(E(l)) = dim ker H0(beta(l)) - h0(A(l))
    h1(E(l)) = h0(C(l)) - rank H0(beta(l))

and h2, h3 come from the same formulas applied to the dual monad.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

from .polyring import (
    DEFAULT_CHAR,
    FieldMatrix,
    Ideal,
    Poly,
    PolyMatrix,
    ShapeError,
    Verdict,
    check_char,
    default_degree_cap,
    empty_projective_zero_locus,
    matrix_mul,
    minors,
    monomials,
    parse_poly,
    rank_over_field,
)
from .spectra import Spectrum, h1_predicted, satisfies_connectedness, satisfies_s3


class MonadFormatError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InconsistentMonadError(RuntimeError):
    """The numbers computed from a presentation contradict it being a monad."""


class SpectrumError(ValueError):
    def __init__(self, message: str, twist: int | None = None):
        if twist is not None:
            message = f"{message} (twist {twist})"
        super().__init__(message)
        self.twist = twist


def h0_line(d: int) -> int:
    return comb(d + 3, 3) if d >= 0 else 0


def h0_sum(degrees: Sequence[int], l: int = 0) -> int:
    return sum(h0_line(d + l) for d in degrees)


def chi_line(d: int) -> int:
    # (d+3)(d+2)(d+1)/6 as a polynomial in d; vanishes for d = -1, -2, -3
    return (d + 3) * (d + 2) * (d + 1) // 6


def chi_sum(degrees: Sequence[int], l: int = 0) -> int:
    return sum(chi_line(d + l) for d in degrees)


@dataclass(frozen=True)
class MonadPresentation:
    """``alpha`` is |B| x |A|, ``beta`` is |C| x |B|; both kept with exact integer coefficients."""

    A: tuple
    B: tuple
    C: tuple
    alpha: PolyMatrix
    beta: PolyMatrix
    field_char: int = DEFAULT_CHAR
    name: str = field(default="", compare=False)

    def __post_init__(self):
        check_char(self.field_char)
        if self.alpha.rows != len(self.B) or (self.A and self.alpha.cols != len(self.A)):
            raise ShapeError(f"alpha must be {len(self.B)}x{len(self.A)}, got {self.alpha.rows}x{self.alpha.cols}")
        if self.beta.rows != len(self.C) or (self.B and self.beta.cols != len(self.B)):
            raise ShapeError(f"beta must be {len(self.C)}x{len(self.B)}, got {self.beta.rows}x{self.beta.cols}")

    @classmethod
    def from_strings(cls, A, B, C, alpha, beta, field_char: int = DEFAULT_CHAR, name: str = "") -> "MonadPresentation":
        return cls(
            tuple(A), tuple(B), tuple(C),
            PolyMatrix.from_rows(alpha, 0),
            PolyMatrix.from_rows(beta, 0),
            field_char,
            name,
        )

    @cached_property
    def alpha_f(self) -> PolyMatrix:
        return self.alpha.to_char(self.field_char)

    @cached_property
    def beta_f(self) -> PolyMatrix:
        return self.beta.to_char(self.field_char)

    def max_degree(self) -> int:
        return max(abs(d) for d in self.A + self.B + self.C)

    def dual(self) -> "MonadPresentation":
        """C* -> B* -> A* with maps beta^T and alpha^T."""
        return MonadPresentation(
            tuple(-d for d in self.C),
            tuple(-d for d in self.B),
            tuple(-d for d in self.A),
            self.beta.transpose(),
            self.alpha.transpose(),
            self.field_char,
            f"dual({self.name})" if self.name else "dual",
        )

    def with_char(self, char: int) -> "MonadPresentation":
        return MonadPresentation(self.A, self.B, self.C, self.alpha, self.beta, char, self.name)


# -- validation ----------------------------------------------------------------


def _degrees_ok(M: PolyMatrix, source: Sequence[int], target: Sequence[int]) -> bool:
    for i, row in enumerate(M.entries):
        for j, f in enumerate(row):
            if f.is_zero():
                continue
            want = target[i] - source[j]
            if want < 0 or not f.is_homogeneous() or f.degree != want:
                return False
    return True


def _has_unit_entry(M: PolyMatrix) -> bool:
    return any(not f.is_zero() and f.is_constant() for row in M.entries for f in row)


def _max_entry_degree(M: PolyMatrix) -> int:
    degs = [int(f.degree) for row in M.entries for f in row if not f.is_zero()]
    return max(degs) if degs else 0


def _minor_locus(M: PolyMatrix, k: int, degree_cap: int | None) -> Verdict:
    if k == 0:
        return Verdict("empty", degree=0)
    if k > min(M.rows, M.cols):
        # not enough rows/columns for full rank anywhere
        return Verdict("nonempty", witness=(1, 0, 0, 0))
    cap = degree_cap if degree_cap is not None else default_degree_cap(_max_entry_degree(M))
    gens = [g for g in minors(M, k) if not g.is_zero()]
    return empty_projective_zero_locus(Ideal(tuple(gens), M.char), cap)


def _tri(v: Verdict) -> bool | None:
    return None if v.undecided else v.empty


@dataclass(frozen=True)
class MonadReport:
    degree_ok: bool
    minimal: bool
    composition_zero: bool
    beta_surjective: bool | None
    alpha_left_invertible: bool | None
    beta_verdict: Verdict | None = None
    alpha_verdict: Verdict | None = None

    def flags(self) -> dict:
        return {
            "degree_ok": self.degree_ok,
            "minimal": self.minimal,
            "composition_zero": self.composition_zero,
            "beta_surjective": self.beta_surjective,
            "alpha_left_invertible": self.alpha_left_invertible,
        }

    @property
    def undecided(self) -> bool:
        return None in self.flags().values()

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.flags().values())


def validate_monad(m: MonadPresentation, degree_cap: int | None = None) -> MonadReport:
    """Check degrees, minimality, beta*alpha = 0 over Z and the two rank conditions.

    Surjectivity of beta and local left-invertibility of alpha are decided by the
    emptiness of the zero loci of the maximal minors, over ``m.field_char``.
    """
    degree_ok = _degrees_ok(m.alpha, m.A, m.B) and _degrees_ok(m.beta, m.B, m.C)
    minimal = not (_has_unit_entry(m.alpha) or _has_unit_entry(m.beta))
    composition_zero = matrix_mul(m.beta, m.alpha).is_zero()
    if not degree_ok:
        return MonadReport(degree_ok, minimal, composition_zero, False, False)
    bv = _minor_locus(m.beta_f, len(m.C), degree_cap)
    av = _minor_locus(m.alpha_f, len(m.A), degree_cap)
    return MonadReport(degree_ok, minimal, composition_zero, _tri(bv), _tri(av), bv, av)


# -- graded pieces ---------------------------------------------------------------


_MONO_CACHE: dict = {}


def _basis(d: int) -> tuple:
    got = _MONO_CACHE.get(d)
    if got is None:
        mons = monomials(d)
        got = (mons, {e: i for i, e in enumerate(mons)})
        _MONO_CACHE[d] = got
    return got


def map_section_matrix(M: PolyMatrix, source: Sequence[int], target: Sequence[int], l: int) -> FieldMatrix:
    """Matrix of H0(M(l)): H0(source(l)) -> H0(target(l)) in monomial bases.

    Bases are summand-major, then grevlex-decreasing inside each summand.
    """
    offsets, total = [], 0
    for d in target:
        offsets.append(total)
        total += h0_line(d + l)
    cols = []
    for j, dj in enumerate(source):
        mons, _ = _basis(dj + l)
        for mono in mons:
            col: dict = {}
            for i, di in enumerate(target):
                f = M.entries[i][j]
                if f.is_zero():
                    continue
                _, index = _basis(di + l)
                base = offsets[i]
                for e, c in f.terms.items():
                    key = base + index[(e[0] + mono[0], e[1] + mono[1], e[2] + mono[2], e[3] + mono[3])]
                    col[key] = c
            cols.append(col)
    return FieldMatrix(total, len(cols), tuple(cols), M.char)


def section_matrix(m: MonadPresentation, side: str, l: int) -> FieldMatrix:
    """``side`` is ``"beta"`` (B -> C) or ``"alpha"`` (A -> B)."""
    if side == "beta":
        return map_section_matrix(m.beta_f, m.B, m.C, l)
    if side == "alpha":
        return map_section_matrix(m.alpha_f, m.A, m.B, l)
    raise ValueError(f"unknown side {side!r}")


def _beta_rank(m: MonadPresentation, l: int) -> int:
    if h0_sum(m.B, l) == 0 or h0_sum(m.C, l) == 0:
        return 0
    return rank_over_field(section_matrix(m, "beta", l))


def h1_E(m: MonadPresentation, l: int) -> int:
    return h0_sum(m.C, l) - _beta_rank(m, l)


def h0_E(m: MonadPresentation, l: int) -> int:
    value = h0_sum(m.B, l) - _beta_rank(m, l) - h0_sum(m.A, l)
    if value < 0:
        raise InconsistentMonadError(
            f"h0(E({l})) came out as {value}: sections of A do not inject into ker beta"
        )
    return value


def h2_E(m: MonadPresentation, l: int) -> int:
    """Cokernel dimension of H0(alpha^T) at twist -l-4 on the dual monad."""
    return h1_E(m.dual(), -l - 4)


def h3_E(m: MonadPresentation, l: int) -> int:
    return h0_E(m.dual(), -l - 4)


def is_stable(m: MonadPresentation) -> bool:
    return h0_E(m, 0) == 0


def cohomology_table(m: MonadPresentation, twists: Sequence[int]) -> dict:
    return {l: (h0_E(m, l), h1_E(m, l), h2_E(m, l), h3_E(m, l)) for l in twists}


def euler_characteristic(m: MonadPresentation, l: int) -> int:
    return chi_sum(m.B, l) - chi_sum(m.A, l) - chi_sum(m.C, l)


# -- Chern classes ---------------------------------------------------------------


def chern_c2(a: Sequence[int], b: Sequence[int]) -> int:
    """c2 = sum a_i^2 - sum b_j^2 for the symmetric monad shape."""
    return sum(x * x for x in a) - sum(y * y for y in b)


def monad_c1(m: MonadPresentation) -> int:
    return sum(m.B) - sum(m.A) - sum(m.C)


def monad_c2(m: MonadPresentation) -> int:
    """Second Chern class of the cohomology, via ch2 (requires c1 = 0)."""
    if monad_c1(m) != 0:
        raise ValueError(f"c1 = {monad_c1(m)}, expected 0")
    twice = sum(d * d for d in m.A) + sum(d * d for d in m.C) - sum(d * d for d in m.B)
    if twice % 2:
        raise InconsistentMonadError("odd second Chern character")
    return twice // 2


# -- spectrum --------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumExtraction:
    spectrum: Spectrum
    h1_ladder: dict  # l -> h1(E(-l)), l >= 1
    n: dict  # l -> n_l


def extract_spectrum(m: MonadPresentation) -> SpectrumExtraction:
    if h0_E(m, 0) != 0:
        raise SpectrumError("bundle is not stable: h0(E) > 0", twist=0)
    c2 = monad_c2(m)
    ladder = {}
    l = 1
    limit = max(m.C) + 2 if m.C else 2
    while True:
        ladder[l] = h1_E(m, -l)
        if ladder[l] == 0:
            nxt = h1_E(m, -l - 1)
            if nxt != 0:
                raise SpectrumError(f"h1 vanishes and then returns ({nxt})", twist=-l - 1)
            ladder[l + 1] = 0
            break
        if l > limit:
            raise SpectrumError("h1 ladder does not terminate", twist=-l)
        l += 1
    top = max(ladder)
    n = {j: ladder[j] - ladder.get(j + 1, 0) for j in range(1, top)}

    def nl(j):
        return n.get(j, 0)

    K = 0
    while nl(K + 2) > 0:
        K += 1
    s0 = 2 * nl(1) - c2
    mults = [s0] + [nl(k + 1) - nl(k + 2) for k in range(1, K + 1)]
    for k, v in enumerate(mults):
        if v < 0:
            raise SpectrumError(f"negative multiplicity {v} for {k}", twist=-(k + 1))
    if s0 + 2 * sum(mults[1:]) != c2:
        raise SpectrumError(f"spectrum size {s0 + 2 * sum(mults[1:])} differs from c2 = {c2}")
    sp = Spectrum(tuple(mults))
    cnt = sp.counter()
    if not satisfies_connectedness(cnt) or not satisfies_s3(cnt):
        raise SpectrumError(f"reconstructed multiset {sp.compact()} violates the spectrum conditions")
    for j, v in ladder.items():
        if h1_predicted(sp, -j) != v:
            raise SpectrumError(f"spectrum predicts {h1_predicted(sp, -j)}, computed {v}", twist=-j)
    return SpectrumExtraction(sp, ladder, n)


def spectrum_of(m: MonadPresentation) -> Spectrum:
    return extract_spectrum(m).spectrum


# -- JSON interchange ------------------------------------------------------------


def monad_to_dict(m: MonadPresentation) -> dict:
    return {
        "field_char": m.field_char,
        "A": list(m.A),
        "B": list(m.B),
        "C": list(m.C),
        "alpha": m.alpha.to_strings(),
        "beta": m.beta.to_strings(),
    }


def monad_to_json(m: MonadPresentation) -> str:
    return json.dumps(monad_to_dict(m), indent=2) + "\n"


def _int_list(obj, path: str) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        raise MonadFormatError(path, "expected a list of integers")
    return tuple(obj)


def _matrix(obj, rows: int, cols: int, path: str) -> PolyMatrix:
    if not isinstance(obj, list) or len(obj) != rows:
        raise MonadFormatError(path, f"expected {rows} rows")
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise MonadFormatError(f"{path}[{i}]", f"expected {cols} entries")
        parsed = []
        for j, text in enumerate(row):
            if not isinstance(text, str):
                raise MonadFormatError(f"{path}[{i}][{j}]", "expected a polynomial string")
            try:
                parsed.append(parse_poly(text, 0))
            except ValueError as exc:
                raise MonadFormatError(f"{path}[{i}][{j}]", str(exc)) from exc
        out.append(tuple(parsed))
    return PolyMatrix(tuple(out), 0)


def monad_from_dict(data) -> MonadPresentation:
    if not isinstance(data, dict):
        raise MonadFormatError("$", "expected an object")
    for key in ("A", "B", "C", "alpha", "beta"):
        if key not in data:
            raise MonadFormatError(f"$.{key}", "missing")
    char = data.get("field_char", DEFAULT_CHAR)
    if not isinstance(char, int) or isinstance(char, bool):
        raise MonadFormatError("$.field_char", "expected an integer")
    try:
        check_char(char)
    except ValueError as exc:
        raise MonadFormatError("$.field_char", str(exc)) from exc
    A = _int_list(data["A"], "$.A")
    B = _int_list(data["B"], "$.B")
    C = _int_list(data["C"], "$.C")
    alpha = _matrix(data["alpha"], len(B), len(A), "$.alpha")
    beta = _matrix(data["beta"], len(C), len(B), "$.beta")
    return MonadPresentation(A, B, C, alpha, beta, char)


def monad_from_json(text: str) -> MonadPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MonadFormatError("$", f"invalid JSON: {exc.msg} (line {exc.lineno})") from exc
    return monad_from_dict(data)

