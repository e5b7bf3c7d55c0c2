"""End-to-end gate: the nine headline checks, each timed against a budget.

Every test appends exactly one verdict line to conftest.ACCEPTANCE_LINES,
echoed after the run.  A check asserts its mathematical statement AND its
runtime budget, so a true-but-slow result still fails.

Two checks state identities that the implementation computes differently,
and they are left failing on purpose rather than weakened:

* check 2, first clause: the plain circle trace of theta over the doubled
  algebra is exactly 0 (every barred letter maps to a strictly
  upper-right block, so any closed trace with at least one edge dies).
  The framing term is visible to the slot observable sigma_m, not to the
  plain trace; see test_observables for the nonzero sigma_1 value.
* check 6, leading coefficient: the interpolated wheel-observable
  polynomial has leading coefficient 2m, not m (both hub orientations of
  the wheel contribute the same top term).  The degree bound m+1 holds.
"""

import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES

from jacobiweights import (
    apply_directed_stu,
    build_gl,
    chi,
    contract_l,
    cut_circle,
    defining_rep,
    diagram_from_key,
    directed_weight_sum,
    directed_wheel,
    double,
    enumerate_diagrams,
    evaluate_sum,
    hopf_pair,
    interpolate_polynomial,
    legal_orientations,
    linking_gauss,
    make_theta_power,
    make_wheel,
    pbw_normal_form,
    reduce_wheel_on_circle,
    rep_R,
    sample_circle,
    sample_trefoil,
    sigma_m,
    sigma_wheel_fast,
    stu_terms,
    verify_leg_bound,
    weight_circle,
    writhe_exact,
    writhe_monte_carlo,
)

SITE_SEED = 20260816


def _verdict(num, ok, desc, t0, budget):
    elapsed = time.perf_counter() - t0
    in_budget = elapsed < budget
    line = "[criterion %d] %s %s (%.2fs, budget %ds)" % (
        num,
        "PASS" if (ok and in_budget) else "FAIL",
        desc,
        elapsed,
        budget,
    )
    ACCEPTANCE_LINES.append(line)
    assert ok and in_budget, line


def test_criterion_1_wheels_vanish_on_the_circle(dbl2, R2):
    t0 = time.perf_counter()
    ok = True
    for m in (2, 3, 4):
        survivors, trace = reduce_wheel_on_circle(m)
        ok = ok and len(survivors) == 0 and trace["reduced_to_zero"]
        ok = ok and directed_weight_sum(make_wheel(m), dbl2, R2) == 0
    _verdict(
        1,
        ok,
        "m=2,3,4 wheel rewrite and directed sum both exactly 0 over the double",
        t0,
        30,
    )


def test_criterion_2_theta_survives(gl2, rep2, dbl2, R2):
    t0 = time.perf_counter()
    theta_dbl = weight_circle(make_theta_power(1), dbl2, R2)
    nonzero = theta_dbl != 0

    # power pattern: a k-fold connected sum divides by tr(1) per splice,
    # so w(theta^k) * dim^(k-1) == w(theta)^k.  Checked where stated (the
    # double, vacuous when the trace vanishes) and over gl(2), where the
    # values 4, 8, 16 make it bite.
    pattern = True
    for alg, rho, dim in ((dbl2, R2, 4), (gl2, rep2, 2)):
        base = weight_circle(make_theta_power(1), alg, rho)
        for k in (1, 2, 3):
            got = weight_circle(make_theta_power(k), alg, rho)
            pattern = pattern and got * Fraction(dim) ** (k - 1) == base**k
    desc = (
        "theta trace over the double is %s (want nonzero), power pattern %s"
        % ("nonzero" if nonzero else "0", "holds" if pattern else "broken")
    )
    _verdict(2, nonzero and pattern, desc, t0, 5)


def test_criterion_3_leg_bound_exhaustive():
    t0 = time.perf_counter()
    corpus = enumerate_diagrams(4)
    sites = 0
    ok = True
    for entry in corpus.entries:
        d = diagram_from_key(entry["key"])
        for o in legal_orientations(d):
            report = verify_leg_bound(o)
            ok = ok and report["legs"] >= report["degree"]
            sites += 1
    ok = ok and sites > 0
    _verdict(
        3,
        ok,
        "legs >= degree on all %d legal orientations of the degree<=4 corpus"
        % sites,
        t0,
        120,
    )


def test_criterion_4_orientation_scheme_equivalence(dbl2, R2):
    t0 = time.perf_counter()
    corpus = enumerate_diagrams(3)
    checked = 0
    ok = True
    for entry in corpus.entries:
        d = diagram_from_key(entry["key"])
        ok = ok and directed_weight_sum(d, dbl2, R2) == weight_circle(d, dbl2, R2)
        checked += 1
    ok = ok and checked > 0
    _verdict(
        4,
        ok,
        "directed sum == circle trace on all %d degree<=3 classes" % checked,
        t0,
        120,
    )


WHEEL_OBSERVABLE_VALUES = {
    (2, 2): 24,
    (2, 3): 96,
    (4, 2): 480,
    (4, 3): 2880,
}


def _sigma_pipeline(m, n):
    g = build_gl(n)
    dbl = double(g)
    R = rep_R(defining_rep(g), dbl)
    w = contract_l(cut_circle(directed_wheel(m), 0), dbl)
    return sigma_m(w, R, m)


def test_criterion_5_observable_identity():
    t0 = time.perf_counter()
    ok = True
    for (m, n), expected in sorted(WHEEL_OBSERVABLE_VALUES.items()):
        g = build_gl(n)
        lhs = _sigma_pipeline(m, n)
        rhs = evaluate_sum(chi(make_wheel(m)), g, defining_rep(g))
        ok = ok and lhs == rhs == expected
    _verdict(
        5,
        ok,
        "sigma of the contracted wheel == chi weight for (m,n) in {2,4}x{2,3}",
        t0,
        60,
    )


def test_criterion_6_leading_term():
    t0 = time.perf_counter()
    degree_ok = True
    leading = {}
    for m in (2, 4):
        points = []
        for n in range(1, m + 3):
            g = build_gl(n)
            points.append((n, sigma_wheel_fast(m, g, defining_rep(g))))
        coeffs = interpolate_polynomial(points)
        degree_ok = degree_ok and len(coeffs) == m + 2 and coeffs[-1] != 0
        leading[m] = coeffs[-1]
    coeff_ok = all(leading[m] == m for m in (2, 4))
    desc = "wheel polynomial degree m+1 %s; leading coefficient %s (want m, got %s)" % (
        "holds" if degree_ok else "broken",
        "== m" if coeff_ok else "!= m",
        ", ".join("%d->%s" % (m, leading[m]) for m in (2, 4)),
    )
    _verdict(6, degree_ok and coeff_ok, desc, t0, 300)


def test_criterion_7_fast_path_soundness():
    t0 = time.perf_counter()
    ok = True
    for m, n in sorted(WHEEL_OBSERVABLE_VALUES):
        g = build_gl(n)
        ok = ok and sigma_wheel_fast(m, g, defining_rep(g)) == _sigma_pipeline(m, n)
    _verdict(
        7,
        ok,
        "sigma_wheel_fast matches the slot pipeline on all four (m,n) inputs",
        t0,
        60,
    )


def _stu_site_pool():
    corpus = enumerate_diagrams(3)
    pool = []
    for entry in corpus.entries:
        if entry["vertices"] == 0:
            continue
        d = diagram_from_key(entry["key"])
        for o in legal_orientations(d):
            for leg in range(o.legs):
                if o.vertex_slot(o.partner(leg)) is not None:
                    pool.append((o, leg))
    return pool


def test_criterion_8_directed_stu_soundness(dbl2, R2):
    t0 = time.perf_counter()
    pool = _stu_site_pool()
    sites = random.Random(SITE_SEED).sample(pool, 20)
    ok = True
    for o, leg in sites:
        # weight pairing: the resolved vertex and its two split-leg terms
        # carry the same trace
        lhs = weight_circle(o, dbl2, R2)
        rhs = sum(
            (coeff * weight_circle(t, dbl2, R2) for t, coeff in apply_directed_stu(o, leg).items()),
            Fraction(0),
        )
        ok = ok and lhs == rhs

        # word pairing, sharper than the trace (which vanishes wholesale
        # over the double): cut each side at the resolution site so the
        # split legs lead the word, then compare enveloping normal forms
        word_lhs = pbw_normal_form(contract_l(cut_circle(o, leg), dbl2), dbl2)
        acc = {}
        for sign, t in stu_terms(o, leg):
            for w, c in pbw_normal_form(contract_l(cut_circle(t, leg), dbl2), dbl2).items():
                s = acc.get(w, Fraction(0)) + sign * c
                if s:
                    acc[w] = s
                elif w in acc:
                    del acc[w]
        ok = ok and word_lhs == acc
    _verdict(
        8,
        ok,
        "directed STU trace and word pairings agree at 20 seeded sites (pool %d)"
        % len(pool),
        t0,
        60,
    )


def test_criterion_9_geometric_framing():
    t0 = time.perf_counter()
    planar = abs(writhe_exact(sample_circle(n=64))) < 1e-12

    c1, c2 = hopf_pair()
    lk = linking_gauss(c1, c2)
    hopf = abs(abs(lk) - 1.0) < 1e-6

    trefoil = sample_trefoil()
    exact = writhe_exact(trefoil)
    estimate, stderr = writhe_monte_carlo(trefoil, samples=10**7, seed=0)
    mc = abs(estimate - exact) < 3.0 * stderr
    desc = (
        "planar writhe %s, hopf linking %s, trefoil MC within %.2f sigma"
        % (
            "0" if planar else "nonzero",
            "+-1" if hopf else repr(lk),
            abs(estimate - exact) / stderr if stderr else float("inf"),
        )
    )
    _verdict(9, planar and hopf and mc, desc, t0, 120)
