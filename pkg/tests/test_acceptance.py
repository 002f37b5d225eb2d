"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (collected and repeated in
the pytest terminal summary).  Run directly with ``python3 tests/test_acceptance.py``
for the lines alone.  Tolerances are exact integer equality throughout; the
runtime limits are the ones stated per criterion.
"""

import contextlib
import io
import itertools
import json
import random
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import reference_data as ref  # noqa: E402
from horrocks.cli import run  # noqa: E402
from horrocks.enumerator import (  # noqa: E402
    MonadShape,
    search_shapes,
    sum_of_squares_tuples,
    table2_row,
    table3_report,
)
from horrocks.family import (  # noqa: E402
    build_ein_x11,
    build_family_monad,
    exceeds_expected,
    family_dimension,
    family_spectrum,
)
from horrocks.graded import (  # noqa: E402
    cohomology_table,
    euler_characteristic,
    h0_E,
    h1_E,
    monad_c2,
    spectrum_of,
    validate_monad,
)
from horrocks.polyring import (  # noqa: E402
    Ideal,
    Poly,
    buchberger,
    common_zeros,
    minors,
    monomials,
    normal_form,
    s_polynomial,
)
from horrocks.spectra import by_label, enumerate_spectra, h1_predicted, parse_spectrum  # noqa: E402

RESULTS = []

LIMIT_SPECTRA = 1.0
LIMIT_RHO = 1.0
LIMIT_SHAPES = 5.0
LIMIT_REPORT = 10.0
LIMIT_FAMILY = 60.0
LIMIT_DIMENSION = 1.0


def _record(n, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} :: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


# -- 1 ----------------------------------------------------------------------------


def test_criterion_1_spectrum_table():
    t0 = time.perf_counter()
    code, out = run(["spectra", "--c2", "9", "--format", "json"])
    _, again = run(["spectra", "--c2", "9", "--format", "json"])
    dt = time.perf_counter() - t0
    rows = json.loads(out)
    got = [parse_spectrum(r["text"]).s for r in rows]
    want = [ref.parse_half(t) for t in ref.TABLE1]
    ok = code == 0 and out == again and got == want and dt < LIMIT_SPECTRA
    extra = [r["spectrum"] for r in rows if not r["label"]]
    detail = f"{len(rows)} rows emitted, 11 expected; byte-stable={out == again}; {dt:.3f}s"
    if extra:
        detail += f"; not in the printed table: {', '.join(extra)}"
    assert _record(1, "spectra --c2 9 gives the 11 printed spectra in order", ok, detail)


# -- 2 ----------------------------------------------------------------------------


def test_criterion_2_rho_table():
    t0 = time.perf_counter()
    mismatches = []
    for i, (k, top, rows) in ref.TABLE2.items():
        gk, gtop, grows = table2_row(by_label(f"X^9_{i}"))
        if (gk, gtop, {j: set(v) for j, v in grows}) != (k, top, rows):
            mismatches.append(i)
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < LIMIT_RHO
    assert _record(2, "rho bounds reproduce every row of the bound table", ok, f"{len(ref.TABLE2)} rows, mismatches={mismatches}; {dt:.3f}s")


# -- 3 ----------------------------------------------------------------------------


def test_criterion_3_shapes():
    t0 = time.perf_counter()
    bad = []
    for i, rho, a, bs in ref.BULLETS:
        cases = {tuple(sorted(c.rho)): c for c in search_shapes(by_label(f"X^9_{i}"))}
        case = cases.get(tuple(sorted(rho.items())))
        if case is None or case.a != ref.parse_a(a) or set(case.solutions) != {ref.parse_b(b) for b in bs}:
            bad.append((i, rho))
    brute = {}
    for size in range(0, 9):
        for tup in itertools.product(range(5), repeat=size):
            t = sum(v * v for v in tup)
            if t <= 20:
                brute.setdefault((t, size), set()).add(tuple(sorted(tup, reverse=True)))
    solver_bad = [
        (t, n)
        for t in range(21)
        for n in range(9)
        if set(sum_of_squares_tuples(t, n)) != brute.get((t, n), set())
    ]
    dt = time.perf_counter() - t0
    ok = not bad and not solver_bad and dt < LIMIT_SHAPES
    detail = f"{len(ref.BULLETS)} listed cases, mismatches={bad}; solver vs brute force (targets<=20, sizes<=8) mismatches={solver_bad}; {dt:.3f}s"
    assert _record(3, "shape enumeration and sum-of-squares solver", ok, detail)


# -- 4 ----------------------------------------------------------------------------


def test_criterion_4_classification():
    t0 = time.perf_counter()
    with contextlib.redirect_stderr(io.StringIO()):
        code, out = run(["enumerate", "--c2", "9", "--include-eliminated", "--format", "json"])
    dt = time.perf_counter() - t0
    recs = json.loads(out)
    exists = {(r["spectrum"], tuple(r["a"]), tuple(r["b"]), r["r"], r["construction"]) for r in recs if r["status"] == "Exists"}
    want = {
        (f"X^9_{i}", ref.parse_a(a), ref.parse_b(b), r, tag) for i, b, a, r, tag in ref.TABLE3 if r != "?"
    }
    n_open = sum(r["status"] == "Open" for r in recs)
    n_neg = sum(r["positivity"] == "Negative" for r in recs)
    n_unc = sum(r["status"] == "Unclassified" for r in recs)
    elim = {(tuple(r["a"]), tuple(r["b"]), r["rule"]) for r in recs if r["status"] == "Eliminated"}

    def shapes(pairs, rule):
        out = set()
        for a, b in pairs:
            s = MonadShape(ref.parse_a(a), ref.parse_b(b))
            out.add((s.a, s.b, rule))
        return out

    listed = shapes(ref.BLUE, "R2") | shapes(ref.RED, "R3") | shapes(ref.SPLIT, "R4")
    rules_ok = listed <= elim and all(rule in ("R1", "R2", "R3", "R4") for _, _, rule in elim)
    ok = exists == want and n_open == 2 and n_neg == 0 and n_unc == 0 and rules_ok and code == 0 and dt < LIMIT_REPORT
    restricted = table3_report(9, spectra=[by_label(f"X^9_{i}") for i in range(1, 12)])
    detail = (
        f"Exists match={exists == want} ({len(exists)}/23), Open={n_open}, Negative={n_neg}, "
        f"unclassified={n_unc}, rule ids ok={rules_ok}, exit={code}; {dt:.3f}s"
        f" | restricted to the 11 printed spectra: unclassified={len(restricted.unclassified)}, "
        f"Negative={len(restricted.negative)}"
    )
    assert _record(4, "enumerate --c2 9 reproduces the classification table", ok, detail)


# -- 5 ----------------------------------------------------------------------------


def test_criterion_5_family():
    details, ok = [], True
    for a in (3, 4, 5):
        t0 = time.perf_counter()
        m = build_family_monad(a)
        rep = validate_monad(m)
        pts = all(
            common_zeros([g for g in minors(M, 2) if not g.is_zero()], q) == []
            for M in (m.beta, m.alpha)
            for q in (2, 3)
        )
        good = rep.passed and pts and monad_c2(m) == 4 * a - 3 and h0_E(m, 0) == 0 and spectrum_of(m) == family_spectrum(a)
        dt = time.perf_counter() - t0
        good = good and dt < LIMIT_FAMILY
        ok &= good
        details.append(f"a={a}: {'ok' if good else 'bad'} ({rep.beta_verdict}, {rep.alpha_verdict}, {dt:.2f}s)")
    assert _record(5, "family monads verify for a = 3, 4, 5", ok, "; ".join(details))


# -- 6 ----------------------------------------------------------------------------


def test_criterion_6_distinguishing():
    e = h1_E(build_family_monad(3), -3)
    f = h1_E(build_ein_x11(), -3)
    assert _record(6, "h1(-3) of family(3) and of the Ein monad", (e, f) == (2, 6), f"got ({e}, {f}), expected (2, 6)")


# -- 7 ----------------------------------------------------------------------------


def test_criterion_7_dimension():
    t0 = time.perf_counter()
    d = family_dimension(3)
    ok = (d.dimH, d.dimW, d.dimGL, d.dimG, d.dimV) == (330, 84, 4, 168, 74)
    for a in range(3, 51):
        da = family_dimension(a)
        expected, positive = exceeds_expected(a)
        ok &= da.dimV == da.dimH - da.dimW - da.dimGL - da.dimG
        ok &= da.dimV == a * (a + 1) + (a + 3) * (a + 2) + (2 * a + 1) * (2 * a - 1) - 3 == 6 * a * a + 6 * a + 2
        ok &= positive and da.dimV - expected == 6 * a * a - 26 * a + 29 > 0
    dt = time.perf_counter() - t0
    ok = ok and dt < LIMIT_DIMENSION
    assert _record(7, "dimension formula", ok, f"a=3 breakdown {d.dimH}/{d.dimW}/{d.dimGL}/{d.dimG} -> {d.dimV}; a in 3..50 checked; {dt:.3f}s")


# -- 8 ----------------------------------------------------------------------------


def _admissible(values):
    cnt = Counter(values)
    if any(cnt[v] != cnt[-v] for v in cnt):
        return False
    if set(range(min(values), max(values) + 1)) - set(values):
        return False
    k = -min(values)
    return not any(
        cnt[u] == 1 and any(cnt[v] != 1 for v in range(-k, u + 1)) for u in range(-k, -1)
    )


def _brute_spectra(c2):
    out = set()
    for p in range(c2 // 2 + 1):
        for pos in itertools.combinations_with_replacement(range(1, c2 + 1), p):
            vals = tuple(sorted([0] * (c2 - 2 * p) + list(pos) + [-v for v in pos]))
            if _admissible(vals):
                out.add(vals)
    return out


def _null_correlation():
    from horrocks.graded import MonadPresentation

    return MonadPresentation.from_strings(
        (-1,), (0, 0, 0, 0), (1,), [["y"], ["-x"], ["w"], ["-z"]], [["x", "y", "z", "w"]]
    )


def test_criterion_8_properties():
    parts = {}
    builtins = [build_family_monad(3), build_family_monad(4), build_family_monad(5), build_ein_x11(), _null_correlation()]
    duality = euler = repredict = True
    for m in builtins:
        table = cohomology_table(m, range(-8, 5))
        dual = m.dual()
        for l in range(-8, 5):
            duality &= table[l][2] == h1_E(m, -l - 4)
            duality &= h1_E(m, l) == h1_E(dual, l)
            h = table[l]
            euler &= h[0] - h[1] + h[2] - h[3] == euler_characteristic(m, l)
        sp = spectrum_of(m)
        repredict &= all(h1_E(m, l) == h1_predicted(sp, l) for l in range(-12, 0))
    parts["duality"] = duality
    parts["euler"] = euler
    parts["spectrum (a)"] = repredict
    parts["enumerator = brute force (c2<=10)"] = all(
        {tuple(sp.entries()) for sp in enumerate_spectra(c2)} == _brute_spectra(c2) for c2 in range(1, 11)
    )
    rng = random.Random(2024)
    gb_ok = True
    for _ in range(25):
        gens = []
        for _ in range(rng.randint(2, 3)):
            mons = rng.sample(monomials(rng.randint(1, 3)), rng.randint(1, 3))
            gens.append(Poly({e: rng.randint(1, 100) for e in mons}, 101))
        G = buchberger(Ideal.of(gens, 101))
        for f, g in itertools.combinations(G.groebner_basis, 2):
            gb_ok &= normal_form(s_polynomial(f, g), G).is_zero()
        d = gens[0].degree + 1
        h = gens[0] * Poly.var("w", 101) + Poly.monomial(monomials(d)[-1], 7, 101)
        nf = normal_form(h, G)
        gb_ok &= normal_form(nf, G) == nf
    parts["GB invariants"] = gb_ok
    ok = all(parts.values())
    assert _record(8, "property suites", ok, ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in parts.items()))


def test_criterion_9_out_of_scope():
    # existence of curve constructions and component-hood are provenance only
    _record(9, "curve constructions / component-hood", True, "not reproducible here; recorded as provenance tags, excluded from pass/fail")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
