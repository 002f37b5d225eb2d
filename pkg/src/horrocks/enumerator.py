"""Candidate minimal monad shapes for a spectrum, and their classification.

A shape is a pair of tuples: ``a`` (degrees of the summands of the right-hand
term, which is dual to the left-hand one) and ``b`` (one value per pair
O(b) + O(-b) in the middle term), related by c2 = sum a^2 - sum b^2.  The
generators of H^1_* of the bundle in degree d < 0 contribute an entry -d to
``a``; generators in degree i >= 0 contribute -i.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .spectra import Spectrum, enumerate_spectra, label


class Positivity(str, Enum):
    POSITIVE = "Positive"
    NONNEGATIVE = "NonNegative"
    NEGATIVE = "Negative"


def _desc(values) -> tuple:
    return tuple(sorted(values, reverse=True))


@dataclass(frozen=True, order=True)
class MonadShape:
    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", _desc(self.a))
        object.__setattr__(self, "b", _desc(self.b))
        if any(v < 0 for v in self.b):
            raise ValueError(f"b entries must be non-negative: {self.b}")
        if len(self.b) != len(self.a) + 1:
            raise ValueError(f"|b| must be |a| + 1, got {len(self.b)} and {len(self.a)}")

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def c2(self) -> int:
        return sum(v * v for v in self.a) - sum(v * v for v in self.b)

    @property
    def positivity(self) -> Positivity:
        low = min(self.a)
        if low > 0:
            return Positivity.POSITIVE
        return Positivity.NONNEGATIVE if low == 0 else Positivity.NEGATIVE

    def key(self) -> str:
        return f"a=({','.join(map(str, self.a))}) b=({','.join(map(str, self.b))})"


def _power_notation(groups) -> str:
    parts = []
    for v, m in groups:
        parts.append(str(v) if m == 1 else f"{v}^{m}")
    return ", ".join(parts)


def _groups(values) -> list:
    out = []
    for v in values:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return out


def printed_a(shape: MonadShape) -> str:
    return _power_notation(_groups(shape.a))


def printed_b(shape: MonadShape) -> str:
    """Printed-table layout: zero pairs are counted as two rank-one summands."""
    groups = [[v, m * 2 if v == 0 else m] for v, m in _groups(shape.b)]
    return _power_notation(groups)


# -- rho bounds ------------------------------------------------------------------


def rho_bounds(sp: Spectrum) -> dict:
    """Degree d -> (lo, hi) for the number of minimal generators of H^1_* in degree d."""
    k = sp.max_support
    s = sp.s
    out = {-k - 1: (s[k], s[k])}
    for i in range(k - 1, -1, -1):
        tail = sum(s[i + 1:])
        out[-i - 1] = (max(0, s[i] - 2 * tail), s[i] - 1)
    for i in range(0, k):
        out[i] = (0, max(s[i + 1] - 2, 0))
    return dict(sorted(out.items()))


def table2_row(sp: Spectrum) -> tuple:
    """(k, rho(-k-1), ((i, allowed values of rho(-i-1)), ...)) for i = 0..k-1."""
    k = sp.max_support
    bounds = rho_bounds(sp)
    rows = tuple((i, tuple(range(bounds[-i - 1][0], bounds[-i - 1][1] + 1))) for i in range(k))
    return (k, bounds[-k - 1][0], rows)


# -- b-tuples --------------------------------------------------------------------


def sum_of_squares_tuples(target: int, size: int, cap: int | None = None) -> list:
    """Non-increasing tuples of ``size`` non-negative integers whose squares sum to ``target``."""
    if target < 0 or size < 0:
        return []
    if cap is None:
        cap = int(target ** 0.5) + 1
    if size == 0:
        return [()] if target == 0 else []
    out = []
    top = min(cap, _isqrt(target))
    for first in range(top, -1, -1):
        rest = target - first * first
        if rest > (size - 1) * first * first:
            break
        for tail in sum_of_squares_tuples(rest, size - 1, first):
            out.append((first,) + tail)
    return out


def _isqrt(n: int) -> int:
    from math import isqrt

    return isqrt(n)


@dataclass(frozen=True)
class SearchCase:
    """One rho assignment and the b-tuples it admits (possibly none)."""

    rho: tuple  # ((degree, count), ...) nonzero counts only, increasing degree
    a: tuple
    target: int
    solutions: tuple

    @property
    def size(self) -> int:
        return len(self.a) + 1


def _a_from_rho(rho: dict) -> tuple:
    a = []
    for d, m in rho.items():
        a.extend([-d] * m)
    return _desc(a)


def search_shapes(sp: Spectrum) -> list:
    bounds = rho_bounds(sp)
    degrees = list(bounds)
    cases = []
    ranges = [range(bounds[d][0], bounds[d][1] + 1) for d in degrees]
    for counts in product(*ranges):
        rho = {d: m for d, m in zip(degrees, counts) if m}
        a = _a_from_rho(rho)
        target = sum(v * v for v in a) - sp.c2
        if target < 0:
            continue
        sols = tuple(sum_of_squares_tuples(target, len(a) + 1))
        cases.append(SearchCase(tuple(rho.items()), a, target, sols))
    cases.sort(key=lambda c: (len(c.a), c.a))
    return cases


def shapes_for(sp: Spectrum, c2: int | None = None) -> list:
    if c2 is not None and c2 != sp.c2:
        raise ValueError(f"spectrum has {sp.c2} entries, not {c2}")
    out = []
    for case in search_shapes(sp):
        for b in case.solutions:
            shape = MonadShape(case.a, b)
            assert shape.c2 == sp.c2 and len(shape.b) == len(shape.a) + 1
            out.append(shape)
    return out


# -- classification --------------------------------------------------------------


def _shape(a, b) -> MonadShape:
    return MonadShape(tuple(a), tuple(b))


BLUE_SHAPES = (
    _shape((3, 1, 1, 1, 1), (1, 1, 1, 1, 0, 0)),
    _shape((4, 1), (2, 2, 0)),
    _shape((3, 2, 2), (2, 2, 0, 0)),
    _shape((3, 1, 1, 1), (1, 1, 1, 0, 0)),
    _shape((4, 1, 1), (2, 2, 1, 0)),
)

RED_SHAPES = (
    _shape((2, 2, 2, 2), (2, 1, 1, 1, 0)),
    _shape((3, 3), (3, 0, 0)),
    _shape((3, 3, 2), (3, 2, 0, 0)),
    # non-negative cases handled by the same section argument
    _shape((2, 2, 2, 2, 0), (2, 1, 1, 1, 0, 0)),
    _shape((2, 2, 2, 2, 0, 0), (2, 1, 1, 1, 0, 0, 0)),
)

SPLIT_SHAPES = (
    _shape((3, 2, 0), (2, 0, 0, 0)),
    _shape((3, 2, 2, 0), (2, 2, 0, 0, 0)),
)

OPEN_SHAPES = (
    _shape((3, 2, 0), (1, 1, 1, 1)),
    _shape((3, 2, 2, 0), (2, 1, 1, 1, 1)),
)


@dataclass(frozen=True)
class Construction:
    r: str
    tag: str


# (spectrum multiplicities, a, b) -> construction, transcribed from the c2 = 9 classification
_T3 = [
    ((9,), (1,) * 9, (0,) * 10, "1", "Instanton"),
    ((7, 1), (2, 1, 1, 1, 1, 1), (0,) * 7, "<=2", "(b): 8(2, i), P_1 or (b): 5(1), C_{2,2}"),
    ((7, 1), (2, 1, 1, 1, 1, 1, 1), (1,) + (0,) * 7, "1", "(b): 8(2, ii), P_1"),
    ((5, 2), (2, 2, 1), (0, 0, 0, 0), "1", "(b): 8(3, i), P_1"),
    ((5, 2), (2, 2, 1, 1), (1, 0, 0, 0, 0), "1", "(b): 8(3, ii), P_1"),
    ((5, 2), (2, 2, 1, 1, 1), (1, 1, 0, 0, 0, 0), "1", "(b): 8(3, iii), P_1"),
    ((5, 2), (2, 2, 1, 1, 1, 1), (1, 1, 1, 0, 0, 0, 0), "1", "(b): 8(3, iv), P_1"),
    ((5, 1, 1), (3, 1), (1, 0, 0), "1", "(b): 8(6, i), P_1"),
    ((5, 1, 1), (3, 1, 1), (1, 1, 0, 0), "1", "(b): 8(6, ii), P_1"),
    ((5, 1, 1), (3, 1, 1, 1, 1), (2, 0, 0, 0, 0, 0), "1", "(b): 8(5), P_1"),
    ((3, 2, 1), (3,), (0, 0), "3", "Ein"),
    ((3, 2, 1), (3, 2), (2, 0, 0), "2", "(b): 5(4), C_{2,2}"),
    ((3, 2, 1), (3, 1), (1, 0, 0), "1", "(b): 8(6, i), P_1"),
    ((3, 2, 1), (3, 2, 1), (2, 1, 0, 0), "1", "(b): 8(6, iii), P_1"),
    ((3, 2, 1), (3, 1, 1), (1, 1, 0, 0), "1", "(b): 8(6, ii), P_1"),
    ((3, 2, 1), (3, 2, 1, 1), (2, 1, 1, 0, 0), "1", "(b): 8(6, iv), P_1"),
    ((3, 1, 1, 1), (4, 1, 1), (3, 0, 0, 0), "1", "(b): 8(7), P_1"),
    ((1, 4), (2, 2, 2, 2, 0, 0), (1,) * 7, "-", "C_{1,4}"),
    ((1, 3, 1), (3, 2), (2, 0, 0), "2", "(b): 5(2), P_1"),
    ((1, 2, 2), (3, 3), (2, 2, 1), "1", "(a): C_{3,2}"),
    ((1, 2, 2), (3, 3, 2), (2, 2, 2, 1), "1", "(a): P_2 u P_3 joined at two points"),
    ((1, 2, 1, 1), (4, 2), (3, 1, 1), "1", "(a): P_4 u P_1 joined at a point"),
    ((1, 1, 1, 1, 1), (5,), (4, 0), "1", "(a): P_5"),
]

TABLE3 = {(s, _shape(a, b)): Construction(r, tag) for s, a, b, r, tag in _T3}


def _r1_applies(shape: MonadShape) -> bool:
    """Three middle degrees squeezed strictly between a single top entry and the rest."""
    values = sorted(set(shape.a))
    if len(values) != 2:
        return False
    a1, a2 = values
    if shape.a.count(a2) != 1 or a1 < 0:
        return False
    for b1, b2, b3 in combinations(shape.b, 3):
        if a2 > b1 >= b2 >= b3 > a1 and b1 + b2 + b3 >= a2:
            return True
    return False


@dataclass(frozen=True)
class Status:
    kind: str  # Exists | Eliminated | Open | Unclassified
    detail: str = ""
    r: str = ""

    def __str__(self) -> str:
        return f"{self.kind}({self.detail})" if self.detail else self.kind


@dataclass(frozen=True)
class MonadCandidate:
    shape: MonadShape
    spectrum: Spectrum
    status: Status = Status("Unclassified")
    notes: tuple = ()

    @property
    def label(self) -> str:
        return label(self.spectrum) or self.spectrum.compact()


def eliminate(c: MonadCandidate) -> MonadCandidate:
    shape = c.shape
    notes = []
    if max(shape.b) == max(shape.a):
        notes.append("b_max = a_max")
    if _r1_applies(shape):
        status = Status("Eliminated", "R1")
    elif shape in BLUE_SHAPES:
        status = Status("Eliminated", "R2")
    elif shape in RED_SHAPES:
        status = Status("Eliminated", "R3")
    elif shape in SPLIT_SHAPES:
        status = Status("Eliminated", "R4")
    elif (c.spectrum.s, shape) in TABLE3:
        known = TABLE3[(c.spectrum.s, shape)]
        status = Status("Exists", known.tag, known.r)
    elif set(shape.a) == {1} and set(shape.b) == {0}:
        status = Status("Exists", "Instanton", "1")
    elif shape in OPEN_SHAPES:
        status = Status("Open", "", "?")
    else:
        status = Status("Unclassified")
    return MonadCandidate(shape, c.spectrum, status, tuple(notes))


# -- the report ------------------------------------------------------------------


class ClassificationError(RuntimeError):
    def __init__(self, report: "Table3Report"):
        lines = [f"{c.label}: {c.shape.key()} [{c.shape.positivity.value}]" for c in report.unclassified]
        lines += [f"{c.label}: {c.shape.key()} is negative" for c in report.negative if c not in report.unclassified]
        super().__init__("classification incomplete:\n  " + "\n  ".join(lines))
        self.report = report


@dataclass
class Table3Report:
    c2: int
    spectra: list
    candidates: list
    empty_cases: list = field(default_factory=list)  # (spectrum, SearchCase) with no b-tuple

    def by_kind(self, kind: str) -> list:
        return [c for c in self.candidates if c.status.kind == kind]

    @property
    def unclassified(self) -> list:
        return self.by_kind("Unclassified")

    @property
    def negative(self) -> list:
        return [c for c in self.candidates if c.shape.positivity is Positivity.NEGATIVE]

    @property
    def complete(self) -> bool:
        return not self.unclassified and not self.negative

    def rows(self, include_eliminated: bool = False) -> list:
        return [c for c in self.candidates if include_eliminated or c.status.kind != "Eliminated"]


def table3_report(c2: int = 9, spectra: list | None = None, strict: bool = False) -> Table3Report:
    """Run enumeration, rho bounds, shape search and elimination over the given spectra.

    ``spectra`` defaults to every spectrum produced by ``enumerate_spectra(c2)``.
    """
    if spectra is None:
        spectra = enumerate_spectra(c2)
    candidates, empty = [], []
    for sp in spectra:
        if sp.c2 != c2:
            raise ValueError(f"spectrum {sp.compact()} has c2 = {sp.c2}")
        for case in search_shapes(sp):
            if not case.solutions:
                empty.append((sp, case))
            for b in case.solutions:
                candidates.append(eliminate(MonadCandidate(MonadShape(case.a, b), sp)))
    report = Table3Report(c2, list(spectra), candidates, empty)
    if strict and not report.complete:
        raise ClassificationError(report)
    return report


_COLUMNS = ("spectrum", "b", "a", "r", "construction", "status", "positivity")


def _record(c: MonadCandidate) -> dict:
    st = c.status
    return {
        "spectrum": c.label,
        "spectrum_text": c.spectrum.text(),
        "a": list(c.shape.a),
        "b": list(c.shape.b),
        "positivity": c.shape.positivity.value,
        "status": st.kind,
        "rule": st.detail if st.kind == "Eliminated" else None,
        "construction": st.detail if st.kind == "Exists" else None,
        "r": st.r or None,
        "notes": list(c.notes),
    }


def format_report(report: Table3Report, fmt: str = "md", include_eliminated: bool = False) -> str:
    rows = report.rows(include_eliminated)
    if fmt == "json":
        return json.dumps([_record(c) for c in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_COLUMNS)
        for c in rows:
            rec = _record(c)
            w.writerow([
                rec["spectrum"],
                " ".join(map(str, rec["b"])),
                " ".join(map(str, rec["a"])),
                rec["r"] or "",
                rec["construction"] or "",
                str(c.status) if c.status.kind != "Exists" else "Exists",
                rec["positivity"],
            ])
        return buf.getvalue()
    if fmt != "md":
        raise ValueError(f"unknown format {fmt!r}")
    out = ["| Spectrum | b | a | r | Construction | Status |", "|---|---|---|---|---|---|"]
    for c in rows:
        st = c.status
        construction = st.detail if st.kind == "Exists" else ("?" if st.kind == "Open" else "")
        status = "Exists" if st.kind == "Exists" else str(st)
        out.append(
            f"| {c.label} | {printed_b(c.shape)} | {printed_a(c.shape)} | {st.r} | {construction} | {status} |"
        )
    counts = {k: len(report.by_kind(k)) for k in ("Exists", "Open", "Eliminated", "Unclassified")}
    out.append("")
    out.append(
        f"c2={report.c2}: {len(report.spectra)} spectra, {len(report.candidates)} candidates; "
        + ", ".join(f"{k} {v}" for k, v in counts.items())
        + f"; Negative {len(report.negative)}"
    )
    for sp, case in report.empty_cases:
        rho = ", ".join(f"rho({d})={m}" for d, m in case.rho)
        out.append(f"no solution: {label(sp) or sp.compact()} with {rho}: sum of {case.size} squares = {case.target}")
    return "\n".join(out) + "\n"
