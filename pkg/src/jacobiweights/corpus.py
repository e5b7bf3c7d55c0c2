"""Exhaustive small-degree diagram corpus and the primitive-space audit.

Enumeration walks perfect matchings on half-edges with two symmetry cuts:
internal vertices are activated in first-touch order and always entered
through their first slot (cyclic slot rotations and vertex relabelings
preserve the class), and an edge never joins two slots of one vertex
(such a class is zero by antisymmetry).  Survivors are deduplicated by
canonical key; classes whose canonical sign is zero are counted but not
listed, since they are the zero element, not a basis candidate.
"""

from __future__ import annotations

import json
import random

from .diagrams import (
    CIRCLE,
    JacobiDiagram,
    canonical_form,
    diagram_from_key,
    make_wheel,
)


def _is_primitive(diagram):
    """Connected once the skeleton is deleted (legs become loose stubs)."""
    L = diagram.legs

    def node(h):
        return ("leg", h) if h < L else ("v", (h - L) // 3)

    adj = {}
    for a, b in diagram.edges:
        na, nb = node(a), node(b)
        adj.setdefault(na, []).append(nb)
        adj.setdefault(nb, []).append(na)
    if not adj:
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == L + diagram.n_vertices


class DiagramCorpus:
    """All nonzero isomorphism classes up to a degree bound, with metadata."""

    def __init__(self, max_degree, skeleton, entries, zero_classes):
        self.max_degree = max_degree
        self.skeleton = skeleton
        self.entries = sorted(entries, key=lambda e: (e["degree"], e["legs"], e["key"]))
        self.zero_classes = dict(zero_classes)
        keys = [e["key"] for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate canonical keys in corpus")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def counts(self):
        """Class counts per (degree, legs)."""
        out = {}
        for e in self.entries:
            k = (e["degree"], e["legs"])
            out[k] = out.get(k, 0) + 1
        return out

    def degree_counts(self):
        out = {}
        for e in self.entries:
            out[e["degree"]] = out.get(e["degree"], 0) + 1
        return out

    def classes(self, degree=None, legs=None, primitive=None):
        for e in self.entries:
            if degree is not None and e["degree"] != degree:
                continue
            if legs is not None and e["legs"] != legs:
                continue
            if primitive is not None and e["primitive"] != primitive:
                continue
            yield e

    def diagram(self, entry):
        return diagram_from_key(entry["key"])

    def diagrams(self, **filters):
        for e in self.classes(**filters):
            yield e, diagram_from_key(e["key"])

    def to_jsonl(self):
        lines = [
            json.dumps(
                {
                    "max_degree": self.max_degree,
                    "skeleton": self.skeleton,
                    "classes": len(self.entries),
                    "zero_classes": {str(k): v for k, v in sorted(self.zero_classes.items())},
                },
                sort_keys=True,
            )
        ]
        for e in self.entries:
            lines.append(json.dumps(e, sort_keys=True))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "<DiagramCorpus %s max_degree=%d classes=%d>" % (
            self.skeleton,
            self.max_degree,
            len(self.entries),
        )


def enumerate_diagrams(max_degree, skeleton=CIRCLE, shuffle_seed=None):
    """Every isomorphism class of diagrams with degree 1..max_degree.

    max_degree is capped at 5 (the half-edge matching space beyond that is
    not worth walking exhaustively).  shuffle_seed permutes the partner
    exploration order; the resulting corpus must not depend on it, which
    the tests exercise.
    """
    if max_degree < 1 or max_degree > 5:
        raise ValueError("max_degree must be between 1 and 5")
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    entries = {}
    zero_keys = {}

    for deg in range(1, max_degree + 1):
        for n_vertices in range(0, 2 * deg):
            legs = 2 * deg - n_vertices
            total = legs + 3 * n_vertices

            def owner(h):
                return None if h < legs else (h - legs) // 3

            matched = [False] * total
            edges = []

            def record():
                diagram = JacobiDiagram(skeleton, legs, n_vertices, list(edges))
                if not diagram.is_connected():
                    return
                key, sign, _ = canonical_form(diagram)
                if sign == 0:
                    zero_keys.setdefault(key, deg)
                    return
                if key not in entries:
                    entries[key] = {
                        "key": key,
                        "degree": deg,
                        "legs": legs,
                        "vertices": n_vertices,
                        "primitive": _is_primitive(diagram),
                    }

            def backtrack(start, activated):
                h = start
                while h < total and matched[h]:
                    h += 1
                if h == total:
                    record()
                    return
                ov = owner(h)
                limit = legs + 3 * activated
                if h >= limit:
                    # every leg and activated slot is matched already, so the
                    # untouched vertices can never reach the skeleton
                    return
                candidates = [
                    p
                    for p in range(h + 1, limit)
                    if not matched[p] and (ov is None or owner(p) != ov)
                ]
                if activated < n_vertices:
                    candidates.append(legs + 3 * activated)
                if rng is not None:
                    rng.shuffle(candidates)
                matched[h] = True
                for p in candidates:
                    matched[p] = True
                    edges.append((h, p))
                    backtrack(h + 1, activated + (1 if p >= limit else 0))
                    edges.pop()
                    matched[p] = False
                matched[h] = False

            backtrack(0, 0)

    zero_counts = {}
    for deg in zero_keys.values():
        zero_counts[deg] = zero_counts.get(deg, 0) + 1
    return DiagramCorpus(max_degree, skeleton, list(entries.values()), zero_counts)


# -- primitive-space audit -----------------------------------------------------


def _default_probes():
    from .algebras import build_gl, build_sl2, defining_rep

    out = []
    for g in (build_gl(2), build_gl(3), build_sl2()):
        out.append((g, defining_rep(g)))
    return out


def _probe_vector(diagram, probes):
    from .weights import weight_circle

    return tuple(weight_circle(diagram, g, rho) for g, rho in probes)


def _rank(vectors):
    """Rank over the rationals by Gauss elimination."""
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / prow[c]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
    return rank


def primitive_audit(corpus, degree, probes=None):
    """Inspect the primitive classes of one degree through weight pairings.

    A legal orientation forces at least `degree` legs, so orientable
    primitives start at exactly `degree` legs; the audit checks what that
    bottom layer spans.  Pairing vectors are weights against a fixed probe
    battery of (algebra, defining rep); spans are compared by exact rank.

    Report fields:
      top_classes        orientable primitive classes with legs == degree
      top_is_wheel       which of those are the wheel's class
      rank_top           pairing rank of top_classes
      rank_wheel         pairing rank of the wheel alone (even degree)
      rank_with_lower    rank of top + all lower-leg primitives of the degree
      rank_lower_wheel   rank of wheel + lower-leg primitives
      top_spans_nothing_new   True when non-wheel top classes add no rank
                              beyond the wheel and the lower-leg classes
    """
    if corpus.max_degree < degree:
        raise ValueError("corpus stops at degree %d" % corpus.max_degree)
    if corpus.skeleton != CIRCLE:
        raise ValueError("the audit pairs circle weights")
    from .orientations import legal_orientations

    if probes is None:
        probes = _default_probes()

    top = []
    lower = []
    for entry, diagram in corpus.diagrams(degree=degree, primitive=True):
        if entry["legs"] == degree:
            if len(legal_orientations(diagram)) > 0:
                top.append((entry, diagram))
        elif entry["legs"] < degree:
            lower.append((entry, diagram))

    wheel_key = None
    wheel_vec = None
    if degree >= 2:
        wheel_key, wheel_sign, wheel_rep = canonical_form(make_wheel(degree))
        if wheel_sign != 0:
            wheel_vec = _probe_vector(wheel_rep, probes)

    top_vecs = {e["key"]: _probe_vector(d, probes) for e, d in top}
    lower_vecs = [_probe_vector(d, probes) for _, d in lower]

    rank_top = _rank(list(top_vecs.values()))
    rank_wheel = _rank([wheel_vec]) if wheel_vec else 0
    rank_lower = _rank(lower_vecs)
    rank_with_lower = _rank(list(top_vecs.values()) + lower_vecs)
    base = ([wheel_vec] if wheel_vec else []) + lower_vecs
    rank_lower_wheel = _rank(base)

    checks = {"top_within_wheel_plus_lower": rank_with_lower == rank_lower_wheel}
    if degree % 2 == 0:
        checks["wheel_among_top"] = wheel_key in top_vecs
    else:
        checks["odd_top_within_lower"] = rank_with_lower == rank_lower

    report = {
        "degree": degree,
        "probes": [g.name for g, _ in probes],
        "top_classes": sorted(top_vecs),
        "top_is_wheel": sorted(k for k in top_vecs if k == wheel_key),
        "lower_leg_classes": sorted(e["key"] for e, _ in lower),
        "rank_top": rank_top,
        "rank_wheel": rank_wheel,
        "rank_lower": rank_lower,
        "rank_with_lower": rank_with_lower,
        "rank_lower_wheel": rank_lower_wheel,
        "top_spans_nothing_new": rank_with_lower == rank_lower_wheel,
        "checks": checks,
        "ok": all(checks.values()),
    }
    return report
