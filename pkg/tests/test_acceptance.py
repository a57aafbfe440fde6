"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line; the lines are printed together
in the terminal summary.  All comparisons are exact.
"""

from __future__ import annotations

import os
import time
from fractions import Fraction
from math import factorial, prod

from facering import generators as gen
from facering.classify import circuit_axiom_check, is_matroid, matroid_witness
from facering.cli import main as cli_main
from facering.cm import (
    connectivity_sequence,
    is_cm_hochster,
    is_cm_reisner,
    skips_from_m_sequence,
)
from facering.complex import f_vector, h_vector
from facering.resolution import betti_table, hochster_betti_table, k_polynomial, shifts
from facering.verify import (
    consistency_euler_ds,
    verify_conjecture,
    verify_dim12,
    verify_gorenstein,
    verify_matroid_theorem,
)

from conftest import (
    ACCEPTANCE_LINES,
    CHARS,
    matroid_zoo,
    named_zoo,
    oracle_minimal_nonfaces,
    random_cm_zoo,
    random_low_dim,
)


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number:>2} [{status}] {title}" + (f": {detail}" if detail else ""))
    print(ACCEPTANCE_LINES[-1])


def cm_suite():
    return list(named_zoo()) + list(random_cm_zoo(200))


def gorenstein_suite():
    out = [(f"cyclic_polytope_boundary(4,{n})", gen.cyclic_polytope_boundary(4, n)) for n in range(6, 11)]
    out += [(f"cyclic_polytope_boundary(5,{n})", gen.cyclic_polytope_boundary(5, n)) for n in range(7, 11)]
    out += [(f"cross_polytope_boundary({d})", gen.cross_polytope_boundary(d)) for d in range(1, 5)]
    return out


def every_zoo():
    seen = {}
    for name, delta in (cm_suite() + list(matroid_zoo()) + list(random_low_dim())
                        + gorenstein_suite() + [("rp2_six_vertex", gen.rp2_six_vertex())]):
        seen.setdefault(delta, name)
    return [(name, delta) for delta, name in seen.items()]


# -- 1 -----------------------------------------------------------------------------------


def test_criterion_01_worked_skip_example():
    start = time.perf_counter()
    t = skips_from_m_sequence((2, 3, 4, 6, 7, 11, 13, 16, 17, 18), 19, 9)
    elapsed = time.perf_counter() - start
    ok = (t.s == (1, 5, 8, 9, 10, 12, 14, 15, 19)
          and t.q == (19, 15, 12, 11, 10, 8, 6, 5, 1)
          and elapsed < 1e-3)
    record(1, "skip table of the n=19 worked example", ok, f"s={t.s} q={t.q} in {elapsed * 1e6:.0f} us")
    assert ok


# -- 2 / 3 ---------------------------------------------------------------------------------


def test_criterion_02_skipped_degrees():
    start = time.perf_counter()
    bad = []
    checked = 0
    for name, delta in cm_suite():
        for p in CHARS:
            if not is_cm_hochster(delta, p):
                bad.append((name, p, "not CM"))
                continue
            n = delta.n
            m = shifts(betti_table(delta, p)).m[: delta.codim]
            q = connectivity_sequence(delta, p).values
            if set(range(1, n + 1)) - set(m) != {n - qj + 1 for qj in q}:
                bad.append((name, p, m, q))
            checked += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    record(2, "skipped m-degrees equal {n-q_j+1} on the CM zoo (chars 0,2,3)", ok,
           f"{checked} cases, {len(bad)} failures, {elapsed:.1f} s")
    assert ok, bad[:5]


def test_criterion_03_facet_estimate():
    bad = []
    checked = 0
    for name, delta in cm_suite():
        for p in CHARS:
            q = connectivity_sequence(delta, p).values
            if Fraction(f_vector(delta)[-1]) < Fraction(prod(q), factorial(delta.d)):
                bad.append((name, p, q))
            checked += 1
    tight = []
    for delta in (gen.cycle(5), gen.complete_graph(4), gen.cross_polytope_boundary(3)):
        for p in CHARS:
            q = connectivity_sequence(delta, p).values
            tight.append(Fraction(f_vector(delta)[-1]) == Fraction(prod(q), factorial(delta.d)))
    ok = not bad and all(tight)
    record(3, "f_{d-1} >= prod q_i / d! on the CM zoo, tight on C5, K4, octahedron", ok,
           f"{checked} cases, {len(bad)} failures, tight={all(tight)}")
    assert ok, bad[:5]


# -- 4 ----------------------------------------------------------------------------------------


def test_criterion_04_matroid_bounds():
    bad = []
    checked = degenerate = equalities = 0
    for name, delta in matroid_zoo():
        if delta.is_simplex:
            degenerate += 1
            continue
        for p in (0, 2):
            v = verify_matroid_theorem(delta, p)
            r = verify_conjecture(delta, p)
            if not v.holds:
                bad.append((name, p, v.detail))
            if r.upper_equal or r.lower_equal:
                equalities += 1
                if not r.pure:
                    bad.append((name, p, "equality without purity"))
            checked += 1
    ok = not bad
    record(4, "matroid complexes satisfy both bounds, equality implies pure", ok,
           f"{checked} cases ({equalities} equalities, {degenerate} full simplices skipped), {len(bad)} failures")
    assert ok, bad[:5]


# -- 5 ----------------------------------------------------------------------------------------


def test_criterion_05_low_dimension():
    bad = []
    cases = cm_cases = dim1 = 0
    for name, delta in random_low_dim(500):
        for p in (0, 2):
            r = verify_conjecture(delta, p)
            v = verify_dim12(delta, p)
            if not r.verdict("upper_bound").holds or not v.holds:
                bad.append((name, p, "upper/dim12", v.detail))
            if r.flags.is_cm:
                cm_cases += 1
                if not r.verdict("lower_bound").holds:
                    bad.append((name, p, "lower"))
            if delta.dim == 1:
                dim1 += 1
                if not r.quasi_pure:
                    bad.append((name, p, "quasi-pure"))
            cases += 1
    ok = not bad
    record(5, "random 1-/2-dim complexes: upper bound, lower bound when CM, dim 1 quasi-pure", ok,
           f"{cases} cases ({cm_cases} CM, {dim1} dim 1), {len(bad)} failures")
    assert ok, bad[:5]


# -- 6 ----------------------------------------------------------------------------------------


def test_criterion_06_gorenstein():
    bad = []
    checked = 0
    for name, delta in gorenstein_suite():
        for p in CHARS:
            v = verify_gorenstein(delta, p)
            if not v.holds:
                bad.append((name, p, v.detail))
            if delta.dim in (2, 3, 4):
                e = consistency_euler_ds(delta, p)
                if not e.holds:
                    bad.append((name, p, e.detail))
            checked += 1
    ok = not bad
    record(6, "Gorenstein* duality, M-skips, q_{d-1}=2, q_{d-2}<=5, bounds, Euler/DS", ok,
           f"{checked} cases, {len(bad)} failures")
    assert ok, bad[:5]


# -- 7 / 8 / 9 / 10 ------------------------------------------------------------------------


def test_criterion_07_cm_oracle_pair():
    bad = []
    checked = 0
    suite = cm_suite() + list(matroid_zoo()) + list(random_low_dim()) + gorenstein_suite()
    for name, delta in suite:
        for p in CHARS:
            if is_cm_reisner(delta, p) != is_cm_hochster(delta, p):
                bad.append((name, p))
            checked += 1
    ok = not bad
    record(7, "link criterion == induced-subcomplex criterion for CM", ok,
           f"{checked} cases, {len(bad)} disagreements")
    assert ok, bad[:5]


def test_criterion_08_matroid_oracle_pair():
    bad = [name for name, delta in every_zoo() if is_matroid(delta) != circuit_axiom_check(delta)]
    c5_witness = matroid_witness(gen.cycle(5))
    u24 = is_matroid(gen.uniform_matroid(2, 4)) and circuit_axiom_check(gen.uniform_matroid(2, 4))
    ok = not bad and c5_witness == (1, 2, 4) and u24
    record(8, "purity criterion == circuit axiom; C5 witness {1,2,4}; U(2,4) accepted", ok,
           f"{len(every_zoo())} complexes, {len(bad)} disagreements, C5 witness={c5_witness}")
    assert ok, bad[:5]


def test_criterion_09_first_syzygies():
    bad = []
    checked = 0
    for name, delta in every_zoo():
        if delta.is_simplex:
            continue
        sizes: dict[int, int] = {}
        for nf in oracle_minimal_nonfaces(delta):
            sizes[len(nf)] = sizes.get(len(nf), 0) + 1
        for p in CHARS:
            if betti_table(delta, p).row(1) != dict(sorted(sizes.items())):
                bad.append((name, p))
            checked += 1
    ok = not bad
    record(9, "beta_{1,j} = number of minimal non-faces of size j", ok, f"{checked} cases, {len(bad)} failures")
    assert ok, bad[:5]


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def test_criterion_10_k_polynomial():
    bad = []
    checked = 0
    for name, delta in every_zoo():
        if delta.is_simplex:
            continue
        rhs = list(h_vector(delta))
        for _ in range(delta.codim):
            rhs = _poly_mul(rhs, [1, -1])
        for p in CHARS:
            table = betti_table(delta, p)
            lhs = [0] * (delta.n + 1)
            lhs[0] = 1
            for (i, j), b in table.beta.items():
                lhs[j] += (-1) ** i * b
            while len(lhs) > 1 and lhs[-1] == 0:
                lhs.pop()
            if lhs != rhs or k_polynomial(table) != rhs:
                bad.append((name, p))
            checked += 1
    ok = not bad
    record(10, "1 + sum (-1)^i beta_{i,j} t^j = (1-t)^{n-d} h(t)", ok, f"{checked} cases, {len(bad)} failures")
    assert ok, bad[:5]


# -- 11 / 12 ------------------------------------------------------------------------------------


def test_criterion_11_field_sensitivity():
    rp2 = gen.rp2_six_vertex()
    cm = {p: is_cm_hochster(rp2, p) for p in (0, 2, 3)}
    differ = betti_table(rp2, 2).beta != betti_table(rp2, 0).beta
    ok = cm == {0: True, 2: False, 3: True} and differ
    record(11, "RP2 (6 vertices): CM over Q and F3, not over F2; tables differ", ok,
           f"CM={cm}, tables differ={differ}")
    assert ok


def test_criterion_12_worked_equalities():
    results = []
    c5 = verify_conjecture(gen.cycle(5), 0)
    results.append(c5.e == c5.lower == c5.upper == 5 and c5.pure)
    octa = verify_conjecture(gen.cross_polytope_boundary(3), 0)
    results.append(octa.e == octa.lower == octa.upper == 8 and octa.pure)
    for n in range(3, 9):
        r = verify_conjecture(gen.complete_graph(n), 0)
        results.append(r.e == n * (n - 1) // 2 == r.upper)
    ok = all(results)
    record(12, "C5: e=5=bounds, octahedron: e=8=bounds (both pure), K_n: e=upper", ok,
           f"{sum(results)}/{len(results)} equalities")
    assert ok


# -- 13 --------------------------------------------------------------------------------------------


def test_criterion_13_determinism_and_timing(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    argv = ["search", "random_pure", "n=8", "d=2", "--trials", "50", "--seed", "1"]
    cli_main(argv + ["--out", str(a)])
    cli_main(argv + ["--out", str(b), "--workers", "2"])
    capsys.readouterr()
    identical = a.read_bytes() == b.read_bytes()

    start = time.perf_counter()
    hochster_betti_table(gen.random_pure(12, 4, 120, seed=12), 0)
    t12 = time.perf_counter() - start

    workers = max(2, os.cpu_count() or 1)
    start = time.perf_counter()
    t = hochster_betti_table(gen.cyclic_polytope_boundary(5, 16), 0, workers=workers)
    t16 = time.perf_counter() - start
    sane = t.beta.get((t.codim, 16)) == 1

    ok = identical and t12 < 60 and t16 < 900 and sane
    record(13, "byte-identical search ledgers; n=12 table < 60 s; n=16 table < 15 min", ok,
           f"identical={identical}, n=12: {t12:.1f} s, n=16: {t16:.1f} s ({workers} workers)")
    assert ok
