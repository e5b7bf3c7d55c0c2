"""Exhaustive low-degree enumeration: golden counts, stability, the audit."""

import json

import pytest

from jacobiweights import (
    CIRCLE,
    INTERVAL,
    build_gl,
    canonicalize,
    defining_rep,
    diagram_from_key,
    enumerate_diagrams,
    make_theta_power,
    make_wheel,
    primitive_audit,
)


def as_counts(corpus):
    return {"%d,%d" % k: v for k, v in sorted(corpus.counts().items())}


def test_degree_one_is_theta_alone():
    c = enumerate_diagrams(1)
    assert len(c) == 1
    only = c.entries[0]
    assert only["key"] == canonicalize(make_theta_power(1))[0]
    assert only["degree"] == 1
    assert only["legs"] == 2


def test_golden_counts_circle(corpus4, golden):
    want = golden["circle_max4"]
    assert len(corpus4) == want["classes"]
    assert as_counts(corpus4) == want["counts"]
    assert {str(k): v for k, v in corpus4.zero_classes.items()} == want["zero_classes"]


def test_golden_counts_circle_degree3(corpus3, golden):
    want = golden["circle_max3"]
    assert len(corpus3) == want["classes"]
    assert {str(k): v for k, v in corpus3.zero_classes.items()} == want["zero_classes"]


def test_golden_counts_interval(golden):
    c = enumerate_diagrams(3, skeleton=INTERVAL)
    want = golden["interval_max3"]
    assert len(c) == want["classes"]
    assert as_counts(c) == want["counts"]
    assert {str(k): v for k, v in c.zero_classes.items()} == want["zero_classes"]


def test_prefix_consistency(corpus3, corpus4):
    # the degree <= 3 corpus is exactly the low-degree slice of degree <= 4
    keys3 = set(e["key"] for e in corpus3)
    keys4_low = set(e["key"] for e in corpus4 if e["degree"] <= 3)
    assert keys3 == keys4_low


def test_membership_of_standard_diagrams(corpus4):
    keys = {e["key"] for e in corpus4}
    for d in (make_theta_power(1), make_theta_power(2), make_wheel(2),
              make_wheel(3), make_wheel(4)):
        key, sign = canonicalize(d)
        assert sign != 0
        assert key in keys


def test_entries_rebuild_and_validate(corpus3):
    for e in corpus3:
        d = diagram_from_key(e["key"])
        d.validate()
        assert d.degree == e["degree"]
        assert d.legs == e["legs"]
        assert d.n_vertices == e["vertices"]
        assert d.is_primitive() == e["primitive"]
        key2, sign2 = canonicalize(d)
        assert key2 == e["key"]
        assert sign2 == 1


def test_exploration_order_does_not_matter(golden):
    base = enumerate_diagrams(3)
    for seed in (1, 99):
        shuffled = enumerate_diagrams(3, shuffle_seed=seed)
        assert [e["key"] for e in shuffled] == [e["key"] for e in base]
        assert shuffled.zero_classes == base.zero_classes


def test_enumeration_guards():
    with pytest.raises(ValueError):
        enumerate_diagrams(0)
    with pytest.raises(ValueError):
        enumerate_diagrams(6)
    with pytest.raises(ValueError):
        enumerate_diagrams(2, skeleton="moebius")


def test_jsonl_round_trip(corpus3):
    lines = corpus3.to_jsonl().strip().split("\n")
    head = json.loads(lines[0])
    assert head["classes"] == len(corpus3)
    assert head["max_degree"] == 3
    assert head["skeleton"] == CIRCLE
    assert len(lines) == len(corpus3) + 1
    for line in lines[1:]:
        e = json.loads(line)
        diagram_from_key(e["key"]).validate()


def test_primitive_flags(corpus3):
    prim = {e["key"] for e in corpus3.classes(primitive=True)}
    assert canonicalize(make_wheel(2))[0] in prim
    assert canonicalize(make_theta_power(1))[0] in prim
    assert canonicalize(make_theta_power(2))[0] not in prim


# -- the audit ------------------------------------------------------------------


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_primitive_audit_passes(corpus4, golden, degree):
    rep = primitive_audit(corpus4, degree)
    want = golden["audits"][str(degree)]
    assert rep["ok"], rep["checks"]
    assert len(rep["top_classes"]) == want["top_classes"]
    assert len(rep["top_is_wheel"]) == want["wheel_in_top"]
    assert len(rep["lower_leg_classes"]) == want["lower"]
    assert rep["rank_top"] == want["rank_top"]
    assert rep["rank_wheel"] == want["rank_wheel"]
    assert rep["rank_lower"] == want["rank_lower"]
    assert rep["rank_with_lower"] == want["rank_with_lower"]
    assert rep["rank_lower_wheel"] == want["rank_lower_wheel"]
    assert rep["top_spans_nothing_new"]


def test_audit_even_degree_contains_wheel(corpus4):
    rep = primitive_audit(corpus4, 2)
    assert rep["checks"]["wheel_among_top"]
    assert rep["top_is_wheel"] == rep["top_classes"]  # degree 2: wheel only


def test_audit_odd_degree_adds_nothing(corpus4):
    rep = primitive_audit(corpus4, 3)
    assert rep["checks"]["odd_top_within_lower"]


def test_audit_guards(corpus3):
    with pytest.raises(ValueError):
        primitive_audit(corpus3, 4)
    interval = enumerate_diagrams(2, skeleton=INTERVAL)
    with pytest.raises(ValueError):
        primitive_audit(interval, 2)


def test_audit_custom_probe(corpus4):
    g = build_gl(2)
    rep = primitive_audit(corpus4, 2, probes=[(g, defining_rep(g))])
    assert rep["probes"] == ["gl(2)"]
    assert rep["ok"]


# -- independence checks on the classifier itself ----------------------------------


def _relabel(d, rot, pi, choice):
    """Apply a rotation, vertex bijection, and per-vertex slot maps."""
    L, V = d.legs, d.n_vertices

    def mp(h):
        if h < L:
            return (h + rot) % L
        v, s = divmod(h - L, 3)
        k, e = choice[v]
        return L + 3 * pi[v] + (k + e * s) % 3

    sign = 1
    for _, e in choice:
        if e < 0:
            sign = -sign
    relabeled = type(d)(d.skeleton, L, V, [(mp(a), mp(b)) for a, b in d.edges])
    return relabeled, sign


def test_canonical_key_is_labeling_invariant(corpus3):
    # regression: the minimal traversal stream must not depend on which
    # representative labeling walks in (a stale pruning flag once let a
    # later branch overwrite a strictly smaller stream)
    import random

    rng = random.Random(20260816)
    for e in corpus3:
        d = diagram_from_key(e["key"])
        for _ in range(4):
            rot = rng.randrange(d.legs)
            pi = list(range(d.n_vertices))
            rng.shuffle(pi)
            choice = [(rng.randrange(3), rng.choice((1, -1))) for _ in range(d.n_vertices)]
            d2, s = _relabel(d, rot, pi, choice)
            key2, sign2 = canonicalize(d2)
            assert key2 == e["key"]
            assert sign2 == s


def test_certificates_agree_with_oracle(corpus3):
    # the brute-force relabeling oracle must split classes exactly the way
    # canonical keys do; the V <= 3 band keeps V! * 6^V affordable
    from _oracle import oracle_certificate

    certs = {}
    for e in corpus3:
        d = diagram_from_key(e["key"])
        if d.n_vertices > 3:
            continue
        cert, signs = oracle_certificate(d.to_json())
        assert len(signs) == 1  # a nonzero class never reaches its own negative
        assert cert not in certs, (e["key"], certs[cert])
        certs[cert] = e["key"]
    assert len(certs) >= 10


def test_zero_class_detected_by_both(gl2, rep2):
    # chord + a stem carrying a two-vertex bubble: exchanging the bubble
    # vertices fixes every leg and reverses one cyclic order, so the class
    # equals its own negative; both classifiers must say so, and the weight
    # must vanish identically
    from _oracle import oracle_certificate
    from jacobiweights import JacobiDiagram, weight_circle

    d = JacobiDiagram(CIRCLE, 3, 3, [(0, 1), (2, 3), (4, 6), (5, 9), (7, 10), (8, 11)])
    key, sign = canonicalize(d)
    assert sign == 0
    _, signs = oracle_certificate(d.to_json())
    assert signs == frozenset({1, -1})
    assert weight_circle(d, gl2, rep2) == 0


def test_naive_matchings_reproduce_small_corpus():
    # every loop-free connected matching at degree <= 2, generated with no
    # symmetry cuts at all, classified only by the brute-force oracle
    from _oracle import oracle_certificate
    from jacobiweights import JacobiDiagram

    def matchings(avail, owner):
        if not avail:
            yield []
            return
        h = avail[0]
        for j in range(1, len(avail)):
            p = avail[j]
            if owner(h) is not None and owner(h) == owner(p):
                continue
            for tail in matchings(avail[1:j] + avail[j + 1 :], owner):
                yield [(h, p)] + tail

    seen = {}
    for deg in (1, 2):
        for V in range(0, 2 * deg):
            L = 2 * deg - V

            def owner(h, L=L):
                return None if h < L else (h - L) // 3

            for m in matchings(list(range(L + 3 * V)), owner):
                d = JacobiDiagram(CIRCLE, L, V, m)
                if not d.is_connected():
                    continue
                cert, signs = oracle_certificate(d.to_json())
                seen.setdefault(cert, (signs, deg))

    nonzero = sum(1 for signs, _ in seen.values() if len(signs) == 1)
    zero = {}
    for signs, deg in seen.values():
        if len(signs) == 2:
            zero[deg] = zero.get(deg, 0) + 1

    c = enumerate_diagrams(2)
    assert nonzero == len(c)
    assert zero == c.zero_classes
