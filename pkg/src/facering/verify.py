"""Multiplicity bounds and the structural theorems, evaluated on one complex.

Every check produces a :class:`~facering.reports.Verdict`.  A check whose
hypotheses fail is reported as not applicable and never counts as a
failure; equality cases outside the classes where purity is proven are
logged as observations only.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from pathlib import Path
from typing import Callable, Iterable

from . import cm as _cm
from .classify import ClassificationFlags, classify, is_gorenstein_star, is_matroid
from .cm import ConnectivitySequence, connectivity_sequence, is_almost_cm
from .complex import SimplicialComplex, delete_vertices, f_vector, from_facets, h_vector
from .errors import DegenerateComplex, FaceRingError, NotAMatroid, NotGorensteinStar, WrongDimension
from .formats import canonical_json, complex_hash, complex_to_doc
from .generators import FamilySpec
from .homology import FieldLike, FieldSpec, as_field, reduced_betti
from .reports import Verdict, check, not_applicable, rational_doc, to_jsonable
from .resolution import (
    BettiTable,
    ShiftSequences,
    betti_table,
    is_pure_resolution,
    is_quasi_pure,
    multiplicity,
    multiplicity_bounds,
    shifts,
)


@dataclass
class MultiplicityReport:
    complex: SimplicialComplex
    field: FieldSpec
    e: int
    lower: Fraction
    upper: Fraction
    table: BettiTable
    shifts: ShiftSequences
    flags: ClassificationFlags
    connectivity: ConnectivitySequence | None
    pure: bool
    quasi_pure: bool
    almost_cm: bool
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def complex_hash(self) -> str:
        return complex_hash(self.complex)

    @property
    def upper_equal(self) -> bool:
        return self.e == self.upper

    @property
    def lower_equal(self) -> bool:
        return self.e == self.lower

    @property
    def ok(self) -> bool:
        return not any(v.failed for v in self.verdicts)

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_doc(self) -> dict:
        return {
            "complex": complex_to_doc(self.complex),
            "hash": self.complex_hash,
            "field": self.field.characteristic,
            "n": self.complex.n,
            "d": self.complex.d,
            "e": self.e,
            "lower": rational_doc(self.lower),
            "upper": rational_doc(self.upper),
            "upper_equal": self.upper_equal,
            "lower_equal": self.lower_equal,
            "m": list(self.shifts.m),
            "M": list(self.shifts.M),
            "pure": self.pure,
            "quasi_pure": self.quasi_pure,
            "almost_cm": self.almost_cm,
            "flags": self.flags.to_doc(),
            "connectivity": None if self.connectivity is None else list(self.connectivity.values),
            "betti": self.table.to_doc(),
            "verdicts": [v.to_doc() for v in self.verdicts],
        }


def _require_nondegenerate(delta: SimplicialComplex) -> None:
    if delta.is_irrelevant:
        raise DegenerateComplex("the complex {emptyset} has no face ring")
    if delta.is_simplex:
        raise DegenerateComplex("a full simplex has the zero face ideal (e = 1 = both bounds)")


def _base_report(delta: SimplicialComplex, fs: FieldSpec) -> MultiplicityReport:
    _require_nondegenerate(delta)
    table = betti_table(delta, fs.characteristic)
    lower, upper = multiplicity_bounds(table)
    flags = classify(delta, fs)
    return MultiplicityReport(
        complex=delta,
        field=fs,
        e=multiplicity(delta),
        lower=lower,
        upper=upper,
        table=table,
        shifts=shifts(table),
        flags=flags,
        connectivity=connectivity_sequence(delta, fs) if flags.is_cm else None,
        pure=is_pure_resolution(table),
        quasi_pure=is_quasi_pure(table),
        almost_cm=is_almost_cm(delta, fs),
    )


def _lower_hypothesis_37(report: MultiplicityReport) -> bool:
    q = report.connectivity
    if q is None:
        return False
    n, d = report.complex.n, report.complex.d
    two_cm = q[-1] >= 2 and (d < 2 or q[1] <= n - d + 1)
    return two_cm or q[-1] >= d


def _purity_classes(report: MultiplicityReport) -> tuple[list[str], list[str]]:
    """Classes with proven equality-implies-purity, for (upper, lower)."""
    flags, dim = report.flags, report.complex.dim
    upper, lower = [], []
    if flags.is_matroid:
        upper.append("matroid")
        lower.append("matroid")
    if dim == 1:
        upper.append("dimension 1")
    if flags.is_cm and dim in (1, 2):
        lower.append(f"CM dimension {dim}")
    if flags.is_gorenstein_star and dim in (3, 4):
        upper.append(f"Gorenstein* dimension {dim}")
        lower.append(f"Gorenstein* dimension {dim}")
    if _lower_hypothesis_37(report):
        lower.append("2-CM with q_1 <= n-d+1, or d-CM")
    if flags.is_cm and report.quasi_pure:
        upper.append("CM quasi-pure")
        lower.append("CM quasi-pure")
    return upper, lower


def equality_purity_check(report: MultiplicityReport) -> Verdict:
    """Whenever e meets a bound, the resolution should be pure (and CM).

    Asserted only inside the proven classes; elsewhere the outcome is an
    observation with no pass/fail meaning.
    """
    name = "equality_implies_purity"
    upper_hit = report.upper_equal
    lower_hit = report.flags.is_cm and report.lower_equal
    if not (upper_hit or lower_hit):
        return not_applicable(name, "no bound is attained")
    upper_classes, lower_classes = _purity_classes(report)
    classes = (upper_classes if upper_hit else []) + (lower_classes if lower_hit else [])
    detail = dict(upper_attained=upper_hit, lower_attained=lower_hit,
                  pure=report.pure, cm=report.flags.is_cm)
    if not classes:
        return not_applicable(name, "conjectural observation outside the proven classes", **detail)
    need_cm = upper_hit and bool(upper_classes)
    ok = report.pure and (report.flags.is_cm or not need_cm)
    return check(name, ok, classes=classes, **detail)


def _conjecture_verdicts(report: MultiplicityReport) -> list[Verdict]:
    e, lower, upper = report.e, report.lower, report.upper
    out = [check("upper_bound", e <= upper, e=e, upper=upper, tight=e == upper)]
    if report.flags.is_cm:
        out.append(check("lower_bound", e >= lower, e=e, lower=lower, tight=e == lower))
    else:
        out.append(not_applicable("lower_bound", "complex is not CM (informational)",
                                  e=e, lower=lower, numerically_holds=e >= lower))
    out.append(equality_purity_check(report))
    if report.flags.is_cm and report.pure:
        out.append(check("pure_cm_equality", e == lower == upper, e=e, lower=lower, upper=upper))
    else:
        out.append(not_applicable("pure_cm_equality", "needs CM and a pure resolution"))
    if report.flags.is_cm and report.quasi_pure:
        out.append(check("quasi_pure_cm_bounds", lower <= e <= upper, e=e, lower=lower, upper=upper))
    else:
        out.append(not_applicable("quasi_pure_cm_bounds", "needs CM and a quasi-pure resolution"))
    if report.almost_cm and report.quasi_pure:
        out.append(check("almost_cm_quasi_pure_upper", e <= upper, e=e, upper=upper))
    else:
        out.append(not_applicable("almost_cm_quasi_pure_upper", "needs almost CM and quasi-pure"))
    return out


def verify_conjecture(delta: SimplicialComplex, field: FieldLike = 0) -> MultiplicityReport:
    """Both multiplicity bounds plus the equality analysis.

    The upper bound is always checked; the lower bound only carries pass/fail
    meaning when the complex is CM.
    """
    report = _base_report(delta, as_field(field))
    report.verdicts.extend(_conjecture_verdicts(report))
    return report


def _combine(name: str, checks: dict[str, bool], **detail) -> Verdict:
    return Verdict(name, True, all(checks.values()), {"checks": checks, **detail})


def _shifts_and_bounds(delta: SimplicialComplex, fs: FieldSpec):
    report = verify_conjecture(delta, fs)
    return report, report.e <= report.upper, report.e >= report.lower


def verify_matroid_theorem(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Both bounds for a matroid complex, and purity when one is attained."""
    fs = as_field(field)
    if not is_matroid(delta):
        raise NotAMatroid("complex has an impure induced subcomplex")
    report, up, low = _shifts_and_bounds(delta, fs)
    attained = report.upper_equal or report.lower_equal
    return _combine(
        "matroid_theorem",
        {"upper": up, "lower": low, "equality_pure": report.pure or not attained},
        e=report.e, lower=report.lower, upper=report.upper,
        m=list(report.shifts.m), M=list(report.shifts.M),
    )


def verify_dim12(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Bounds for one- and two-dimensional complexes."""
    fs = as_field(field)
    if delta.dim not in (1, 2):
        raise WrongDimension(f"expected dimension 1 or 2, got {delta.dim}")
    report, up, low = _shifts_and_bounds(delta, fs)
    cm = report.flags.is_cm
    checks = {"upper": up}
    if delta.dim == 1:
        s = report.shifts
        checks["shift_range"] = all(
            s.m[i - 1] in (i + 1, i + 2) and s.M[i - 1] in (i + 1, i + 2)
            for i in range(1, len(s.m) + 1)
        )
        checks["quasi_pure"] = report.quasi_pure
        if report.upper_equal:
            checks["upper_equality_cm_pure"] = cm and report.pure
    if cm:
        checks["lower"] = low
        if report.lower_equal:
            checks["lower_equality_pure"] = report.pure
    return _combine("dim12_theorem", checks, e=report.e, lower=report.lower,
                    upper=report.upper, cm=cm)


def _self_dual(s: ShiftSequences, n: int, c: int) -> bool:
    m = (0,) + s.m
    M = (0,) + s.M
    if len(s.m) != c:
        return False
    return all(M[i] + m[c - i] == n for i in range(c + 1))


def verify_gorenstein(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Duality of shifts, the M-sequence skips and the dimension 3-4 bounds."""
    fs = as_field(field)
    if not is_gorenstein_star(delta, fs):
        raise NotGorensteinStar("some link is not a homology sphere")
    report, up, low = _shifts_and_bounds(delta, fs)
    n, d, c = delta.n, delta.d, delta.codim
    s = report.shifts
    checks = {"self_duality": _self_dual(s, n, c)}
    detail: dict = dict(m=list(s.m), M=list(s.M), e=report.e,
                        lower=report.lower, upper=report.upper)
    q = report.connectivity.values if report.connectivity else None
    detail["q"] = list(q) if q else None
    if d >= 3:
        checks["top_level_two"] = q[d - 1] == 2
        checks["next_level_at_most_five"] = q[d - 2] <= 5
        checks["M_increasing"] = all(a < b for a, b in zip(s.M, s.M[1:]))
        skipped = sorted(set(range(1, n + 1)) - set(s.M[:c]))
        predicted = sorted(qj - 1 for qj in q)
        checks["M_skips"] = skipped == predicted
        closed = Fraction(n * prod(n - k for k in range(2, d)), prod(q[j] - 1 for j in range(1, d - 1)))
        checks["M_closed_form"] = report.upper == closed
        detail.update(M_skipped=skipped, M_predicted=predicted, closed_form=closed)
    if delta.dim in (3, 4):
        checks["upper"] = up
        checks["lower"] = low
        if report.upper_equal or report.lower_equal:
            checks["equality_pure"] = report.pure
    large_m1 = bool(s.M) and s.M[0] >= d // 2 + 1
    codim_four = c == 4 and d <= 22
    detail.update(large_M1_flag=large_m1, codim4_flag=codim_four)
    if large_m1 or codim_four:
        checks["flagged_upper"] = up
    return _combine("gorenstein_theorem", checks, **detail)


def consistency_euler_ds(delta: SimplicialComplex, field: FieldLike = 0) -> Verdict:
    """Face-count identities of Gorenstein* complexes of dimension 2, 3 and 4."""
    fs = as_field(field)
    if delta.dim not in (2, 3, 4):
        raise WrongDimension(f"expected dimension 2, 3 or 4, got {delta.dim}")
    if not is_gorenstein_star(delta, fs):
        raise NotGorensteinStar("some link is not a homology sphere")
    f = f_vector(delta)[1:]
    n = delta.n
    if delta.dim == 2:
        return check("euler_ds", f[1] == 3 * n - 6, f1=f[1], expected=3 * n - 6)
    if delta.dim == 3:
        return check("euler_ds", f[3] == f[1] - n, f3=f[3], expected=f[1] - n)
    h = h_vector(delta)
    expected = 2 * (h[0] + h[1] + h[2])
    return check("euler_ds", f[4] == expected, f4=f[4], expected=expected)


def _cm_verdicts(delta: SimplicialComplex, fs: FieldSpec) -> list[Verdict]:
    return [
        _cm.verify_main_theorem(delta, fs),
        _cm.verify_q_estimate(delta, fs),
        _cm.verify_skeleton_proposition(delta, fs),
        _cm.lower_bound_certificate(delta, fs),
    ]


def theorem_suite(delta: SimplicialComplex, field: FieldLike = 0) -> MultiplicityReport:
    """Conjecture checks plus every theorem whose hypotheses the complex meets."""
    fs = as_field(field)
    report = verify_conjecture(delta, fs)
    flags = report.flags
    s = report.shifts
    n, c = delta.n, delta.codim
    m = s.m[:c]
    report.verdicts.append(check(
        "m_sequence_bounds",
        len(m) == c and m[0] >= 2 and m[-1] <= n and all(a < b for a, b in zip(m, m[1:])),
        m=list(m),
    ))
    top_homology = reduced_betti(delta, fs)[-1] != 0
    report.verdicts.append(check("top_shift", (s.M[c - 1] == n) == top_homology,
                                 M_c=s.M[c - 1], top_homology=top_homology))
    if flags.is_matroid:
        report.verdicts.append(verify_matroid_theorem(delta, fs))
        report.verdicts.append(check("matroid_cone_or_top_homology",
                                     flags.is_cone or top_homology))
    if flags.is_cm:
        report.verdicts.extend(_cm_verdicts(delta, fs))
        report.verdicts.append(check("M_increasing_when_cm",
                                     all(a < b for a, b in zip(s.M, s.M[1:])), M=list(s.M)))
    if flags.is_2cm:
        report.verdicts.append(check("two_cm_top_shifts", s.m[c - 1] == s.M[c - 1] == n,
                                     m_c=s.m[c - 1], M_c=s.M[c - 1]))
    if delta.dim in (1, 2):
        report.verdicts.append(verify_dim12(delta, fs))
    if flags.is_gorenstein_star:
        report.verdicts.append(verify_gorenstein(delta, fs))
        if delta.dim in (2, 3, 4):
            report.verdicts.append(consistency_euler_ds(delta, fs))
    return report


# -- randomized search ------------------------------------------------------------


def shrink(delta: SimplicialComplex, still_fails: Callable[[SimplicialComplex], bool]) -> SimplicialComplex:
    """Greedy minimization: delete vertices first, then facets, while the
    predicate keeps failing."""
    changed = True
    while changed:
        changed = False
        for v in delta.labels:
            if delta.n <= 1:
                break
            cand = delete_vertices(delta, [v])
            if _fails(still_fails, cand):
                delta, changed = cand, True
                break
        if changed:
            continue
        facets = delta.facets
        for i in range(len(facets)):
            if len(facets) <= 1:
                break
            cand = from_facets(facets[:i] + facets[i + 1:])
            if _fails(still_fails, cand):
                delta, changed = cand, True
                break
    return delta


def _fails(pred, delta) -> bool:
    try:
        return bool(pred(delta))
    except FaceRingError:
        return False


def _conjecture_fails(fs: FieldSpec):
    def pred(delta):
        return not verify_conjecture(delta, fs).ok
    return pred


def _trial_record(spec: FamilySpec, trial: int, delta: SimplicialComplex,
                  fields: list[FieldSpec]) -> dict:
    record: dict = {
        "family": spec.to_doc(),
        "trial": trial,
        "hash": complex_hash(delta),
        "n": delta.n,
        "d": delta.d,
        "facets": len(delta.facet_masks),
    }
    if delta.is_irrelevant or delta.is_simplex:
        record["status"] = "degenerate"
        return record
    per_field = {}
    failed = False
    for fs in fields:
        rep = verify_conjecture(delta, fs)
        entry = {
            "status": "pass" if rep.ok else "fail",
            "e": rep.e,
            "lower": rational_doc(rep.lower),
            "upper": rational_doc(rep.upper),
            "cm": rep.flags.is_cm,
            "pure": rep.pure,
            "upper_tight": rep.upper_equal,
            "lower_tight": rep.flags.is_cm and rep.lower_equal,
            "verdicts": {v.name: v.status for v in rep.verdicts},
        }
        if not rep.ok:
            failed = True
            witness = shrink(delta, _conjecture_fails(fs))
            entry["witness"] = complex_to_doc(witness)
        per_field[str(fs.characteristic)] = entry
    record["fields"] = per_field
    record["status"] = "fail" if failed else "pass"
    return record


def _run_trial(args) -> dict:
    spec, trial, fss = args
    return _trial_record(spec, trial, spec.build(trial), fss)


def fuzz_search(spec: FamilySpec, trials: int, fields: Iterable[FieldLike] = (0,),
                ledger_path=None, workers: int = 1) -> list[dict]:
    """Run the conjecture checks on ``trials`` members of a family.

    Records are ordered by trial index and contain no timing or host data,
    so the same ``(family, trials, seed)`` always produces the same ledger.
    If ``ledger_path`` is given, one JSON line per record is written there,
    followed by a summary line.
    """
    fss = [as_field(f) for f in fields]
    jobs = [(spec, t, fss) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [to_jsonable(r) for r in pool.map(_run_trial, jobs)]
    else:
        records = [to_jsonable(_run_trial(job)) for job in jobs]
    if ledger_path is not None:
        lines = [canonical_json(rec) for rec in records]
        lines.append(canonical_json({"summary": ledger_summary(records)}))
        Path(ledger_path).write_text("\n".join(lines) + "\n")
    return records


def ledger_summary(records: list[dict]) -> dict:
    out = {"trials": len(records), "pass": 0, "fail": 0, "degenerate": 0,
           "upper_tight": 0, "lower_tight": 0}
    for rec in records:
        out[rec["status"]] += 1
        for entry in rec.get("fields", {}).values():
            out["upper_tight"] += entry["upper_tight"]
            out["lower_tight"] += entry["lower_tight"]
    return out
