import json
from math import comb

import pytest

from horrocks.family import build_ein_x11, build_family_monad
from horrocks.graded import (
    MonadFormatError,
    MonadPresentation,
    SpectrumError,
    chern_c2,
    cohomology_table,
    euler_characteristic,
    extract_spectrum,
    h0_E,
    h0_sum,
    h1_E,
    h2_E,
    h3_E,
    is_stable,
    monad_c2,
    monad_from_json,
    monad_to_json,
    section_matrix,
    spectrum_of,
    validate_monad,
)
from horrocks.polyring import PolyMatrix, ShapeError, rank_over_field
from horrocks.spectra import Spectrum, h1_predicted


def null_correlation(char=32003):
    # O(-1) -> 4 O -> O(1), the c2 = 1 instanton
    return MonadPresentation.from_strings(
        (-1,), (0, 0, 0, 0), (1,), [["y"], ["-x"], ["w"], ["-z"]], [["x", "y", "z", "w"]], char
    )


BUILTINS = {
    "null_correlation": null_correlation,
    "family3": lambda: build_family_monad(3),
    "family4": lambda: build_family_monad(4),
    "ein_x11": build_ein_x11,
}


# -- section spaces ------------------------------------------------------------------


def test_h0_of_line_bundle_sums():
    assert h0_sum((2, -2, 0), 0) == comb(5, 3) + 0 + 1
    assert h0_sum((3, 3), -3) == 2


def test_section_matrix_dimensions():
    m = build_family_monad(3)
    M = section_matrix(m, "beta", -3)
    assert M.shape == (2, 0)
    M = section_matrix(m, "beta", 0)
    assert M.shape == (2 * comb(6, 3), 2 * comb(5, 3) + comb(4, 3))
    assert section_matrix(build_ein_x11(), "beta", 0).shape == (56, 37)
    assert rank_over_field(section_matrix(build_ein_x11(), "beta", 0)) == 37
    with pytest.raises(ValueError):
        section_matrix(m, "gamma", 0)


def test_section_matrix_entries_for_linear_map():
    m = null_correlation()
    M = section_matrix(m, "beta", 0)
    # four copies of the constants map onto x, y, z, w in degree 1
    assert M.to_dense() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_family_h1_values():
    m = build_family_monad(3)
    assert h1_E(m, -3) == 2
    assert h1_E(m, -1) == 2 * comb(5, 3) - (2 * comb(4, 3) + 1)
    assert h1_E(m, -1) == 11
    assert h0_E(m, 0) == 0
    assert is_stable(m)


def test_family_h0_at_two_by_elimination():
    m = build_family_monad(3)
    rank = rank_over_field(section_matrix(m, "beta", 2))
    assert h0_E(m, 2) == h0_sum(m.B, 2) - rank - h0_sum(m.A, 2)
    assert rank_over_field(section_matrix(m, "alpha", 2)) == h0_sum(m.A, 2)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_serre_duality(name):
    m = BUILTINS[name]()
    for l in range(-8, 5):
        assert h2_E(m, l) == h1_E(m, -l - 4)
        assert h3_E(m, l) == h0_E(m, -l - 4)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_euler_characteristic(name):
    m = BUILTINS[name]()
    for l, h in cohomology_table(m, range(-8, 5)).items():
        assert h[0] - h[1] + h[2] - h[3] == euler_characteristic(m, l)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_spectrum_repredicts_h1(name):
    m = BUILTINS[name]()
    sp = spectrum_of(m)
    for l in range(-12, 0):
        assert h1_E(m, l) == h1_predicted(sp, l)


def test_spectra_of_builtins():
    assert spectrum_of(null_correlation()) == Spectrum((1,))
    assert spectrum_of(build_family_monad(3)) == Spectrum((1, 2, 2))
    assert spectrum_of(build_ein_x11()).text() == "-4,-3,-2,-1,0,1,2,3,4"
    ex = extract_spectrum(build_family_monad(3))
    assert ex.n[1] == 5
    assert ex.h1_ladder[3] == 2


def test_chern_classes():
    assert chern_c2((3, 3), (2, 2, 1)) == 9
    assert monad_c2(build_family_monad(3)) == 9
    assert monad_c2(build_ein_x11()) == 9
    assert monad_c2(null_correlation()) == 1
    bad = MonadPresentation.from_strings((-1,), (0, 0), (2,), [["x"], ["y"]], [["x^2", "y^2"]])
    with pytest.raises(ValueError):
        monad_c2(bad)


# -- validation ------------------------------------------------------------------


def test_null_correlation_validates():
    rep = validate_monad(null_correlation())
    assert rep.passed
    assert str(rep.beta_verdict) == "Empty(1)"


def test_constant_entry_is_not_minimal():
    # the null correlation monad plus a cancelling pair O(1) -> O(1)
    m = MonadPresentation.from_strings(
        (-1,),
        (0, 0, 0, 0, 1),
        (1, 1),
        [["y"], ["-x"], ["w"], ["-z"], ["0"]],
        [["x", "y", "z", "w", "0"], ["0", "0", "0", "0", "1"]],
    )
    rep = validate_monad(m)
    assert rep.degree_ok and rep.composition_zero and not rep.minimal
    assert not rep.passed
    m = MonadPresentation.from_strings(
        (-1,), (0, 0, 0, 0), (0,), [["y"], ["-x"], ["w"], ["-z"]], [["x", "0", "0", "0"]]
    )
    assert not validate_monad(m).degree_ok


def test_nonzero_composition_detected():
    m = MonadPresentation.from_strings(
        (-1,), (0, 0, 0, 0), (1,), [["y"], ["x"], ["w"], ["-z"]], [["x", "y", "z", "w"]]
    )
    rep = validate_monad(m)
    assert not rep.composition_zero and not rep.passed


def test_non_surjective_beta_has_witness():
    m = MonadPresentation.from_strings(
        (-1,), (0, 0, 0, 0), (1,), [["y"], ["-x"], ["w"], ["-w"]], [["x", "y", "z", "z"]]
    )
    rep = validate_monad(m)
    assert rep.composition_zero
    assert rep.beta_surjective is False
    assert rep.beta_verdict.witness == (0, 0, 0, 1)


def test_undecided_propagates():
    rep = validate_monad(null_correlation(), degree_cap=0)
    assert rep.beta_surjective is None
    assert rep.undecided and not rep.passed


def test_matrix_sizes_must_match_degree_lists():
    with pytest.raises(ShapeError):
        MonadPresentation((-1,), (0, 0), (1,), PolyMatrix.from_rows([["x"]], 0), PolyMatrix.from_rows([["x", "y"]], 0))


def test_unstable_bundle_spectrum_error():
    # x*l1 + y*l2 = 0 has the solution (y, -x) in degree 1, so E has a section
    m = MonadPresentation.from_strings(
        (-2,), (1, 1, -1, -1), (2,), [["z^3"], ["w^3"], ["-x"], ["-y"]], [["x", "y", "z^3", "w^3"]]
    )
    assert validate_monad(m).passed
    assert h0_E(m, 0) > 0
    with pytest.raises(SpectrumError) as info:
        spectrum_of(m)
    assert info.value.twist == 0


# -- JSON --------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_json_roundtrip(name):
    m = BUILTINS[name]()
    text = monad_to_json(m)
    back = monad_from_json(text)
    assert back == m
    assert monad_to_json(back) == text


def test_json_schema_fields():
    data = json.loads(monad_to_json(build_ein_x11()))
    assert set(data) == {"field_char", "A", "B", "C", "alpha", "beta"}
    assert data["beta"] == [["x", "y^5", "z^5", "w^9"]]


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda d: d.pop("beta"), "$.beta"),
        (lambda d: d.__setitem__("A", ["x"]), "$.A"),
        (lambda d: d.__setitem__("field_char", 12), "$.field_char"),
        (lambda d: d["alpha"].pop(), "$.alpha"),
        (lambda d: d["beta"][0].__setitem__(1, "y^^5"), "$.beta[0][1]"),
        (lambda d: d["beta"][0].__setitem__(2, 5), "$.beta[0][2]"),
    ],
)
def test_json_errors_name_the_field(mutate, path):
    data = json.loads(monad_to_json(build_ein_x11()))
    mutate(data)
    with pytest.raises(MonadFormatError) as info:
        monad_from_json(json.dumps(data))
    assert info.value.path == path


def test_invalid_json_text():
    with pytest.raises(MonadFormatError):
        monad_from_json("{not json")
