"""Spectra of stable rank-2 bundles with c1 = 0.

A spectrum is a symmetric multiset of c2 integers.  It is stored by its
non-negative half: ``s[k]`` is the multiplicity of ``k`` (and of ``-k``).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class Spectrum:
    s: tuple

    def __post_init__(self):
        if not self.s or any(m < 0 for m in self.s):
            raise ValueError(f"invalid multiplicity vector {self.s}")

    @classmethod
    def from_multiset(cls, values: Iterable[int]) -> "Spectrum":
        cnt = Counter(values)
        if not satisfies_symmetry(cnt):
            raise ValueError(f"multiset {sorted(cnt.elements())} is not symmetric")
        top = max(abs(k) for k in cnt) if cnt else 0
        return cls(tuple(cnt.get(k, 0) for k in range(top + 1)))

    @property
    def c2(self) -> int:
        return self.s[0] + 2 * sum(self.s[1:])

    @property
    def max_support(self) -> int:
        return len(self.s) - 1

    def mult(self, k: int) -> int:
        k = abs(k)
        return self.s[k] if k < len(self.s) else 0

    def entries(self) -> list:
        out = []
        for k in range(-self.max_support, self.max_support + 1):
            out.extend([k] * self.mult(k))
        return out

    def counter(self) -> Counter:
        return Counter(self.entries())

    def text(self) -> str:
        return ",".join(str(k) for k in self.entries())

    def compact(self) -> str:
        K = self.max_support
        parts = []
        for k in range(-K, K + 1):
            m = self.mult(k)
            if m:
                parts.append(f"{k}" if m == 1 else f"{k}^{m}")
        return "{" + ",".join(parts) + "}"

    def half_form(self) -> str:
        """Non-negative half with a leading ellipsis, the layout of printed tables."""
        parts = [f"{k}" if m == 1 else f"{k}^{m}" for k, m in enumerate(self.s) if m]
        if self.max_support == 0:
            return "{" + ", ".join(parts) + "}"
        return "{..., " + ", ".join(parts) + "}"

    def __str__(self) -> str:
        return self.compact()


_COMPACT_ITEM = re.compile(r"^\s*(-?\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_spectrum(text: str) -> Spectrum:
    """Accept ``"-1,0,1"`` or the compact ``"{-1^2,0,1^2}"``."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    values = []
    for item in body.split(","):
        if not item.strip():
            continue
        m = _COMPACT_ITEM.match(item)
        if not m:
            raise ValueError(f"cannot parse spectrum item {item!r}")
        values.extend([int(m.group(1))] * int(m.group(2) or 1))
    if not values:
        raise ValueError("empty spectrum")
    return Spectrum.from_multiset(values)


# -- the three admissibility conditions, on raw multisets ---------------------


def satisfies_symmetry(cnt: Counter) -> bool:
    return all(cnt[k] == cnt[-k] for k in cnt)


def satisfies_connectedness(cnt: Counter) -> bool:
    present = [k for k, m in cnt.items() if m > 0]
    if not present:
        return False
    return all(cnt[k] > 0 for k in range(min(present), max(present) + 1))


def satisfies_s3(cnt: Counter) -> bool:
    """If some u in [-k, -2] occurs once (k = max of -k_i), everything in [-k, u] occurs once."""
    present = [k for k, m in cnt.items() if m > 0]
    if not present:
        return False
    k = max(-v for v in present)
    for u in range(-k, -1):
        if cnt[u] == 1 and any(cnt[v] != 1 for v in range(-k, u + 1)):
            return False
    return True


def is_admissible(values: Iterable[int]) -> bool:
    cnt = Counter(values)
    return satisfies_symmetry(cnt) and satisfies_connectedness(cnt) and satisfies_s3(cnt)


def catalogue_order_key(sp: Spectrum) -> tuple:
    # descending lexicographic on (s(0), s(1), ...)
    return tuple(-m for m in sp.s)


def _compositions(total: int) -> Iterator[tuple]:
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def enumerate_spectra(c2: int) -> list:
    """All spectra of size ``c2`` satisfying symmetry, connectedness and the S.3 rule."""
    if c2 < 1:
        raise ValueError(f"c2 must be positive, got {c2}")
    out = []
    for s0 in range(c2 % 2 or 2, c2 + 1, 2):
        for tail in _compositions((c2 - s0) // 2):
            sp = Spectrum((s0,) + tail)
            if satisfies_s3(sp.counter()):
                out.append(sp)
    out.sort(key=catalogue_order_key)
    return out


def n_l(sp: Spectrum, l: int) -> int:
    """Number of spectrum entries >= l - 1 (equals h1(E(-l)) - h1(E(-l-1)))."""
    if l < 1:
        raise ValueError("n_l is defined for l >= 1")
    return sum(m for k, m in sp.counter().items() if k >= l - 1)


def h1_predicted(sp: Spectrum, l: int) -> int:
    """h^1(E(l)) for l <= -1, read off the spectrum."""
    if l >= 0:
        raise ValueError("the spectrum determines h^1(E(l)) only for l <= -1")
    return sum(m * max(0, k + l + 2) for k, m in sp.counter().items())


# Table of spectra for c2 = 9 as printed in the source classification, in
# printed order.  Used for labels only; enumeration never reads it.
TABLE1_C2_9 = (
    (9,),
    (7, 1),
    (5, 2),
    (5, 1, 1),
    (3, 2, 1),
    (3, 1, 1, 1),
    (1, 4),
    (1, 3, 1),
    (1, 2, 2),
    (1, 2, 1, 1),
    (1, 1, 1, 1, 1),
)

CATALOGUE = {9: tuple(Spectrum(s) for s in TABLE1_C2_9)}


def label(sp: Spectrum) -> str | None:
    """``X^9_i`` for spectra in the printed c2 = 9 table, else ``None``."""
    table = CATALOGUE.get(sp.c2, ())
    for i, t in enumerate(table, start=1):
        if t == sp:
            return f"X^{sp.c2}_{i}"
    return None


def by_label(name: str) -> Spectrum:
    m = re.fullmatch(r"X\^?(\d+)_(\d+)", name.replace("{", "").replace("}", ""))
    if not m:
        raise ValueError(f"bad spectrum label {name!r}")
    c2, i = int(m.group(1)), int(m.group(2))
    table = CATALOGUE.get(c2)
    if not table or not 1 <= i <= len(table):
        raise KeyError(name)
    return table[i - 1]
