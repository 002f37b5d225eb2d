"""Built-in explicit monads and the dimension count for the infinite family.

For a >= 3 the family monad is

    2 O(-a) --alpha--> 2 O(a-1) + 2 O(1-a) + O(1) + O(-1) --beta--> 2 O(a)

with c2 = 4a - 3 and spectrum {(1-a)^2, ..., -1^2, 0, 1^2, ..., (a-1)^2}.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

from .enumerator import MonadShape
from .graded import MonadPresentation, h1_E
from .polyring import DEFAULT_CHAR
from .spectra import Spectrum


def _check_a(a: int) -> int:
    if not isinstance(a, int) or isinstance(a, bool) or a < 3:
        raise ValueError(f"family parameter must be an integer >= 3, got {a!r}")
    return a


def _pow(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def build_family_monad(a: int, field_char: int = DEFAULT_CHAR) -> MonadPresentation:
    _check_a(a)
    e = 2 * a - 1
    beta = [
        ["x", "0", _pow("w", e), _pow("z", e), _pow("y", a - 1), _pow("z", a + 1)],
        ["y", "x", _pow("z", e), _pow("w", e), _pow("x", a - 1), "0"],
    ]
    xz = f"{_pow('x', a - 2)}*{_pow('z', a + 1)}"
    alpha = [
        [_pow("w", e), "0"],
        [_pow("z", e), f"{_pow('w', e)}+{xz}"],
        ["-x", "0"],
        ["-y", "-x"],
        ["0", f"-{_pow('z', a + 1)}"],
        [f"y*{_pow('z', a - 2)}", f"x*{_pow('z', a - 2)}+{_pow('y', a - 1)}"],
    ]
    return MonadPresentation.from_strings(
        (-a, -a),
        (a - 1, a - 1, 1 - a, 1 - a, 1, -1),
        (a, a),
        alpha,
        beta,
        field_char,
        f"family(a={a})",
    )


def family_spectrum(a: int) -> Spectrum:
    _check_a(a)
    return Spectrum((1,) + (2,) * (a - 1))


def family_h1_closed_form(a: int, l: int) -> int:
    """h^1(E(-l)) for l >= 2, from the count of sections of 2 O(a - l)."""
    _check_a(a)
    if l < 2:
        raise ValueError("closed form holds for l >= 2")
    return max(0, (a + 2 - l) * (a + 1 - l)) if l <= a + 1 else 0


def build_ein_x11(field_char: int = DEFAULT_CHAR) -> MonadPresentation:
    """O(-5) -> O(4) + 2 O + O(-4) -> O(5) with a pairwise-cancelling choice of maps."""
    return MonadPresentation.from_strings(
        (-5,),
        (4, 0, 0, -4),
        (5,),
        [["w^9"], ["-z^5"], ["y^5"], ["-x"]],
        [["x", "y^5", "z^5", "w^9"]],
        field_char,
        "ein_x11",
    )


def instanton_shape(c2: int) -> MonadShape:
    return MonadShape((1,) * c2, (0,) * (c2 + 1))


def ein_shape(c: int, b: int, a: int) -> MonadShape:
    """O(-c) -> O(a) + O(-a) + O(b) + O(-b) -> O(c), c > b >= a >= 0."""
    if not c > b >= a >= 0:
        raise ValueError("need c > b >= a >= 0")
    return MonadShape((c,), (b, a))


# the null-correlation/instanton series uses the same shape
hartshorne_shape = instanton_shape


BUILTINS = {
    "family": build_family_monad,
    "ein_x11": build_ein_x11,
}


# -- dimensions ------------------------------------------------------------------


@dataclass(frozen=True)
class DimensionBreakdown:
    dimH: int
    dimW: int
    dimGL: int
    dimG: int
    dimV: int
    expected: int

    def as_dict(self) -> dict:
        return asdict(self)


def family_dimension(a: int) -> DimensionBreakdown:
    _check_a(a)
    dimH = 16 + 2 * comb(a + 2, 3) + 2 * comb(a + 4, 3) + 4 * comb(2 * a + 2, 3)
    dimW = comb(2 * a + 3, 3)
    dimGL = 4
    dimG = 15 + 2 * comb(a + 1, 3) + 2 * comb(a + 3, 3) + 3 * comb(2 * a + 1, 3)
    dimV = dimH - dimW - dimGL - dimG
    other = a * (a + 1) + (a + 3) * (a + 2) + (2 * a + 1) * (2 * a - 1) - 3
    if not dimV == other == 6 * a * a + 6 * a + 2:
        raise ArithmeticError(f"dimension expressions disagree at a={a}: {dimV}, {other}")
    return DimensionBreakdown(dimH, dimW, dimGL, dimG, dimV, 8 * (4 * a - 3) - 3)


def exceeds_expected(a: int) -> tuple:
    _check_a(a)
    expected = 32 * a - 27
    excess = 6 * a * a - 26 * a + 29
    assert family_dimension(a).dimV - expected == excess
    return expected, excess > 0


# -- the four components for c2 = 9 ------------------------------------------------


@dataclass(frozen=True)
class ComponentRow:
    name: str
    description: str
    dimension: str
    source: str


@dataclass(frozen=True)
class ComponentReport:
    rows: tuple
    h1_family_m3: int
    h1_ein_m3: int

    def format(self) -> str:
        out = ["| Component | Description | Dimension | Source |", "|---|---|---|---|"]
        for r in self.rows:
            out.append(f"| {r.name} | {r.description} | {r.dimension} | {r.source} |")
        out.append("")
        out.append(f"h1(E(-3)) for the family monad at a=3: {self.h1_family_m3}")
        out.append(f"h1(F(-3)) for the Ein monad O(-5) -> O(4)+2O+O(-4) -> O(5): {self.h1_ein_m3}")
        out.append("these differ, so the two families are not in one another's closure by semicontinuity")
        out.append("(the direction of the semicontinuity argument is recorded, not checked)")
        return "\n".join(out) + "\n"

    def as_dict(self) -> dict:
        return {
            "components": [asdict(r) for r in self.rows],
            "h1_minus3": {"family_a3": self.h1_family_m3, "ein_x11": self.h1_ein_m3},
        }


def component_report(c2: int = 9) -> ComponentReport:
    if c2 != 9:
        raise ValueError("component report is only available for c2 = 9")
    dim = family_dimension(3)
    rows = (
        ComponentRow("M1", "instanton (Hartshorne) component", str(8 * c2 - 3), "expected dimension 8c2-3"),
        ComponentRow("M2", "Ein component", "69", "external constant"),
        ComponentRow("M3", "Ein component", "96", "external constant"),
        ComponentRow(
            "M4",
            "closure of the family V(3^2;2,1); of Ein type N'(0,4,5) (external, not derived)",
            f">= {dim.dimV}",
            "family_dimension(3)",
        ),
    )
    return ComponentReport(rows, h1_E(build_family_monad(3), -3), h1_E(build_ein_x11(), -3))
