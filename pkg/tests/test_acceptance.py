"""Acceptance suite: the package's exit criteria, one test per criterion.

All checks are exact (integer equalities); the two timed criteria assert
wall-clock budgets.  Each test prints one PASS line on success.
"""

import random
import time

from gapcurve import linalg
from gapcurve.classify import (
    canonical_fingerprint,
    classify_ring,
    enumerate_types,
    model_algebra,
)
from gapcurve.curve import Multifiltration, RationalNormalCurve
from gapcurve.errors import GapcurveError, NotStabilizedError
from gapcurve.fields import GF, QQ
from gapcurve.gaps import (
    ALGEBRA_CLOSED,
    VECTOR_SPACE,
    GapFunction,
    close_algebra,
    key_lemma_holds,
    simplex,
)
from gapcurve.project import ProjectionCenter, analyze, check_center, find_ramification
from gapcurve.schubert import (
    sample_center,
    stratum_partition,
    stratum_spec,
    table_codim,
)
from gapcurve.series import Ambient, SeriesSubspace, TruncatedSeries

F = GF(10007)


def monomial_rows(d, indices):
    rows = []
    for idx in indices:
        row = [0] * (d + 1)
        row[idx] = 1
        rows.append(row)
    return rows


def sharp_family_center(field, d, n):
    return ProjectionCenter.from_linear_system(
        field, d, monomial_rows(d, [0] + list(range(d - n + 1, d + 1)))
    )


def sharp_family_pairs():
    return [(d, n) for d in range(4, 11) for n in range(3, d) if d < 2 * n]


# ---------------------------------------------------------------------------
# criterion 1: sharp-bound family


def test_criterion_1_sharp_bound_family():
    pairs = sharp_family_pairs()
    assert len(pairs) == 19

    def sweep(field):
        for d, n in pairs:
            center = sharp_family_center(field, d, n)
            curve = RationalNormalCurve(field, d)
            report = analyze(center, curve)
            assert len(report.clusters) == 1, (d, n)
            (cl,) = report.clusters
            assert cl.points[0].at_infinity, (d, n)
            assert cl.delta == d - n, (d, n, cl.delta)

    t0 = time.monotonic()
    sweep(F)
    fp_elapsed = time.monotonic() - t0
    t0 = time.monotonic()
    sweep(QQ)
    qq_elapsed = time.monotonic() - t0
    assert fp_elapsed < 10.0, f"F_p sweep took {fp_elapsed:.1f}s (budget 10s)"
    assert qq_elapsed < 60.0, f"rational sweep took {qq_elapsed:.1f}s (budget 60s)"
    print(
        f"\nACCEPTANCE 1: PASS - 19 curves, delta = d-n at (1:0) every time "
        f"(F_p {fp_elapsed:.1f}s, Q {qq_elapsed:.1f}s)"
    )


# ---------------------------------------------------------------------------
# criterion 2: hypothesis sharpness at d = 2n


def test_criterion_2_hypothesis_sharpness():
    for n in (3, 4, 5):
        d = 2 * n
        center = ProjectionCenter.from_linear_system(
            F, d, monomial_rows(d, [0] + list(range(n + 1, d + 1)))
        )
        curve = RationalNormalCurve(F, d)
        report = analyze(center, curve, enforce_hypotheses=False)
        assert report.hypotheses["two_ell_lt_d_minus_2g"] is False, n
        assert len(report.clusters) == 1
        (cl,) = report.clusters
        assert cl.points[0].at_infinity
        assert cl.delta == n + 1, (n, cl.delta)
    print("\nACCEPTANCE 2: PASS - d = 2n measures delta = n+1 with the gate reporting violation")


# ---------------------------------------------------------------------------
# criterion 3: quintic golden tests


def test_criterion_3_quintic_goldens():
    curve = RationalNormalCurve(F, 5)
    # the two canonical (3,4,5)-cusp parametrizations
    c1 = ProjectionCenter.from_linear_system(F, 5, monomial_rows(5, [0, 3, 4, 5]))
    lead = [0] * 6
    lead[0] = 1
    lead[2] = 1  # x^5 + x^3 y^2
    c2 = ProjectionCenter.from_linear_system(F, 5, [lead] + monomial_rows(5, [3, 4, 5]))
    for c in (c1, c2):
        report = analyze(c, curve)
        assert [cl.type_label for cl in report.clusters] == ["2.1.a"]
    # the cusp-with-smooth-branch family, five distinct nonzero parameters
    for cval in (1, 2, 3, 5, 8):
        lead = [0] * 6
        lead[0] = 1
        lead[4] = cval
        lead[5] = -1  # x^5 + c x y^4 - y^5
        c = ProjectionCenter.from_linear_system(F, 5, [lead] + monomial_rows(5, [3, 2, 1]))
        report = analyze(c, curve)
        assert [cl.type_label for cl in report.clusters] == ["2.2.b"], cval
    print("\nACCEPTANCE 3: PASS - both quintic cusp parametrizations and the 2.2.b family classify exactly")


# ---------------------------------------------------------------------------
# criterion 4: classification completeness and distinctness


def test_criterion_4_classification_complete_and_distinct():
    types = enumerate_types()
    assert len(types) == 21
    fingerprints = {}
    for t in types:
        gap = GapFunction(model_algebra(t), ALGEBRA_CLOSED)
        assert classify_ring(gap) == t, t.label
        fp = canonical_fingerprint(gap, gap.degree())
        assert fp not in fingerprints, (t.label, fingerprints.get(fp))
        fingerprints[fp] = t.label
    assert len(fingerprints) == 21
    print("\nACCEPTANCE 4: PASS - 21 types, model round trips exact, fingerprints pairwise distinct")


# ---------------------------------------------------------------------------
# criteria 5 and 6 share a corpus of seeded centers


def _center_corpus():
    """100 seeded valid centers over F_10007 with ell <= 3, d <= 10.

    Generic random centers are smooth, so a third of the corpus is drawn from
    singularity strata to make the per-cluster checks non-vacuous.
    """
    rng = random.Random(20260808)
    combos = [(d, ell) for ell in (1, 2, 3) for d in range(2 * ell + 1, 11) if d - ell >= 3]
    stratum_types = [t for t in enumerate_types() if t.label not in ("3.1.d", "3.2.f")]
    corpus = []
    i = 0
    while len(corpus) < 100:
        d, ell = combos[i % len(combos)]
        i += 1
        curve = RationalNormalCurve(F, d)
        if i % 3 == 0:
            feasible = [
                t for t in stratum_types if t.delta <= ell and 2 * t.branches <= d
            ]
            stype = feasible[rng.randrange(len(feasible))]
            pts = []
            while len(pts) < stype.branches:
                cand = curve.point(rng.randrange(F.p), 1)
                if cand not in pts:
                    pts.append(cand)
            try:
                spec = stratum_spec(stype, pts, curve, ell)
                center = sample_center(spec, rng.randrange(10**9), curve)
            except GapcurveError:
                continue
        else:
            center = ProjectionCenter.from_rows(
                F, d, [[F.random_element(rng) for _ in range(d + 1)] for _ in range(ell)]
            )
            if center.ell != ell or not check_center(center, curve).basepoint_free:
                continue
        corpus.append((center, curve))
    return corpus


_corpus_cache = []


def corpus():
    if not _corpus_cache:
        _corpus_cache.extend(_center_corpus())
    return _corpus_cache


def _series_gap_for_cluster(center, curve, points):
    """The gap function of (1/s)M from local expansions (series side)."""
    m_rows = center.m_basis()
    s = next(
        (row for row in m_rows if all(curve.section_value(row, p) for p in points)), None
    )
    if s is None:
        return None
    n = curve.degree + 2
    amb = Ambient(center.field, len(points), n)
    inv = [curve.local_expansion(s, p, n).inverse() for p in points]
    vectors = []
    for row in m_rows:
        branches = [
            (curve.local_expansion(row, p, n) * si).coeffs[0] for p, si in zip(points, inv)
        ]
        vectors.append(TruncatedSeries(amb, branches))
    return GapFunction(SeriesSubspace.span(amb, vectors), VECTOR_SPACE)


def test_criterion_5_dual_path_invariant():
    checked_cells = 0
    clusters_seen = 0
    for center, curve in corpus():
        d = curve.degree
        for cluster in find_ramification(center, curve):
            clusters_seen += 1
            points = cluster.points
            vgap = _series_gap_for_cluster(center, curve, points)
            assert vgap is not None
            assert vgap.is_standard()  # cluster gap functions are standard
            filt = Multifiltration(curve, points)
            for alpha in simplex(d + 1, len(points)):
                if any(a > vgap.truncation for a in alpha):
                    continue
                flag_dim = linalg.intersection_dim(
                    center.rows, filt.subspace_rows(alpha), center.field
                )
                assert vgap(alpha) == flag_dim, (alpha, points)
                checked_cells += 1
    assert clusters_seen >= 30  # the stratified third guarantees real clusters
    print(
        f"\nACCEPTANCE 5: PASS - series gap equals flag intersection on "
        f"{checked_cells} cells across {clusters_seen} clusters, zero exceptions"
    )


def test_criterion_6_genus_bound_on_corpus():
    for center, curve in corpus():
        report = analyze(center, curve)
        assert report.delta_total <= center.ell, (center.ell, report.delta_total)
        assert report.genus_bound["holds"]
    print("\nACCEPTANCE 6: PASS - sigma delta <= ell on all 100 corpus centers")


# ---------------------------------------------------------------------------
# criterion 7: key-lemma fuzz


def _random_subalgebra(rng, field, max_branches, truncation):
    r = rng.randrange(1, max_branches + 1)
    amb = Ambient(field, r, truncation)
    vectors = [TruncatedSeries.unit(amb)]
    for i in range(r):
        for e in sorted({rng.randrange(1, 6) for _ in range(rng.randrange(1, 4))}):
            terms = [(i, e, 1)]
            if rng.random() < 0.5 and e + 1 < truncation:
                terms.append((i, e + 1, field.random_element(rng)))
            if rng.random() < 0.2:
                other = rng.randrange(r)
                terms.append((other, rng.randrange(1, 4), field.random_element(rng)))
            vectors.append(TruncatedSeries.from_monomials(amb, terms))
    return SeriesSubspace.span(amb, vectors)


def test_criterion_7_key_lemma_fuzz():
    rng = random.Random(77)
    field = GF(101)
    checked = 0
    attempts = 0
    while checked < 200 and attempts < 4000:
        attempts += 1
        space = _random_subalgebra(rng, field, 3, truncation=16)
        if not space.contains_unit():
            continue
        gap = GapFunction(close_algebra(space), ALGEBRA_CLOSED)
        try:
            delta = gap.degree()
        except NotStabilizedError:
            continue
        if delta > 4:
            continue
        for gamma in (delta, delta + 1):
            if gap.truncation < 2 * gamma + 2:
                continue
            assert key_lemma_holds(gap, gamma), (gamma, delta)
        checked += 1
    assert checked >= 200
    print(f"\nACCEPTANCE 7: PASS - key lemma holds on {checked} random subalgebras (gamma in {{delta, delta+1}})")


# ---------------------------------------------------------------------------
# criterion 8: Schubert round trip


def test_criterion_8_schubert_round_trip():
    t0 = time.monotonic()
    # partition sizes against the tables' codimension formulas
    for n in (4, 5, 6):
        for t in enumerate_types():
            part = stratum_partition(t, n)
            assert part.size - t.branches == table_codim(t, n), (t.label, n)

    rng = random.Random(8855)
    draws = 0
    rejections = 0
    cases = [(t, 8, 5) for t in enumerate_types()]
    cases += [(t, 5, 3) for t in enumerate_types() if t.delta <= 2]
    for stype, d, n in cases:
        curve = RationalNormalCurve(F, d)
        ell = d - n
        matched = 0
        for k in range(20):
            pts = []
            while len(pts) < stype.branches:
                cand = curve.point(rng.randrange(F.p), 1)
                if cand not in pts:
                    pts.append(cand)
            spec = stratum_spec(stype, pts, curve, ell)
            center = sample_center(spec, rng.randrange(10**9), curve)
            report = analyze(center, curve)
            draws += 1
            got_points = {q.coords() for cl in report.clusters for q in cl.points}
            want_points = {q.coords() for q in pts}
            labels = [cl.type_label for cl in report.clusters]
            if got_points == want_points and labels == [stype.label]:
                matched += 1
            else:
                rejections += 1
        assert matched > 0, (stype.label, d, n)
    elapsed = time.monotonic() - t0
    assert rejections <= 0.10 * draws, f"{rejections} rejections out of {draws} draws"
    assert elapsed < 300.0, f"round-trip suite took {elapsed:.0f}s (budget 300s)"
    print(
        f"\nACCEPTANCE 8: PASS - {draws} samples over {len(cases)} type/(d,n) cases, "
        f"{rejections} boundary rejections ({100.0 * rejections / draws:.1f}%), {elapsed:.0f}s"
    )


# ---------------------------------------------------------------------------
# criterion 9: multifiltration dimensions


def test_criterion_9_multifiltration_dimension():
    rng = random.Random(13)
    checked = 0
    while checked < 50:
        d = rng.randrange(3, 11)
        curve = RationalNormalCurve(F, d)
        r = rng.randrange(1, 5)
        pts = []
        while len(pts) < r:
            cand = curve.point(rng.randrange(F.p), 1 if rng.random() < 0.9 else 0)
            if cand not in pts:
                pts.append(cand)
        alpha = [0] * r
        for _ in range(rng.randrange(0, d + 2)):
            alpha[rng.randrange(r)] += 1
        if sum(alpha) > d + 1:
            continue
        filt = Multifiltration(curve, pts)
        assert filt.dim(alpha) == sum(alpha), (d, pts, alpha)
        checked += 1
    print("\nACCEPTANCE 9: PASS - dim F^alpha = |alpha| on 50 random configurations")
