"""Edge orientations, directed rewriting moves, and the wheel reduction.

An orientation is legal when every internal vertex has exactly one ingoing
edge.  Skeleton legs are free: a leg hit by an arrow head carries a barred
letter, a leg at an arrow tail a plain one.  Since each edge has one head
and each vertex absorbs exactly one, the number of barred legs of a legal
orientation always equals the diagram's degree; in particular a diagram
with fewer legs than its degree admits no legal orientation at all.

Rewriting moves on concrete (labeled) diagrams:

* `stu_terms` resolves the internal vertex met by a chosen leg into the two
  diagrams where the vertex's remaining arms attach directly to the
  skeleton, with signs +1 / -1 (first arm in cyclic order lands at the old
  leg position in the + term).  Directions ride along unchanged, so on a
  legal input the outputs are again legal.
* `commute_adjacent_legs` swaps two neighboring barred legs (their letters
  commute, so the class value under any weight built on the doubled
  algebra is unchanged).
* A "zero pattern" is a vertex with arrows out to two *adjacent* barred
  legs: swapping those legs is simultaneously a commuting move and a
  reversal of the vertex's cyclic order, so the class equals its own
  negative under such weights and its value is zero.

`reduce_wheel` drives a directed wheel to zero patterns by one STU step
and a chain of commuting moves, recording every step in a JSON-ready
trace.
"""

from __future__ import annotations

from .diagrams import (
    CIRCLE,
    DiagramSum,
    DirectedJacobiDiagram,
    JacobiDiagram,
)


# -- legal orientations ------------------------------------------------------


class OrientationSum:
    """The legal orientations of one underlying diagram, coefficient +1 each.

    Holds the concrete (labeled) directed diagrams so no information is
    lost to canonical merging; `to_diagram_sum` collapses to class level,
    where isomorphic orientations accumulate coefficients.
    """

    def __init__(self, base, orientations):
        self.base = base
        self.orientations = tuple(orientations)

    def __len__(self):
        return len(self.orientations)

    def __iter__(self):
        return iter(self.orientations)

    def __getitem__(self, i):
        return self.orientations[i]

    def to_diagram_sum(self):
        total = DiagramSum()
        for d in self.orientations:
            total.add(d, 1)
        return total

    def __repr__(self):
        return "<OrientationSum of %r: %d legal>" % (self.base, len(self.orientations))


def legal_orientations(diagram):
    """All orientations of the edges with one ingoing edge per vertex.

    Returns an OrientationSum of concrete DirectedJacobiDiagram objects,
    one per assignment (no merging of isomorphic results; collapse with
    `to_diagram_sum` or see `directed_sum`).
    """
    if diagram.directed:
        raise ValueError("diagram is already directed")
    edges = diagram.edges
    n_v = diagram.n_vertices
    heads = [0] * n_v
    remaining = [0] * n_v  # undecided half-edges per vertex
    for a, b in edges:
        for h in (a, b):
            vs = diagram.vertex_slot(h)
            if vs:
                remaining[vs[0]] += 1
    out = []
    chosen = []

    def place(h, delta):
        vs = diagram.vertex_slot(h)
        if vs:
            heads[vs[0]] += delta

    def feasible():
        return all(
            heads[v] <= 1 and heads[v] + remaining[v] >= 1 for v in range(n_v)
        )

    def rec(i):
        if i == len(edges):
            if all(h == 1 for h in heads) or n_v == 0:
                out.append(
                    DirectedJacobiDiagram(
                        diagram.skeleton, diagram.legs, n_v, list(chosen)
                    )
                )
            return
        a, b = edges[i]
        for h in (a, b):
            vs = diagram.vertex_slot(h)
            if vs:
                remaining[vs[0]] -= 1
        for tail, head in ((a, b), (b, a)):
            place(head, 1)
            if feasible():
                chosen.append((tail, head))
                rec(i + 1)
                chosen.pop()
            place(head, -1)
        for h in (a, b):
            vs = diagram.vertex_slot(h)
            if vs:
                remaining[vs[0]] += 1

    rec(0)
    return OrientationSum(diagram, out)


def directed_sum(diagram):
    """The sum of all legal orientations, as a class-level combination."""
    return legal_orientations(diagram).to_diagram_sum()


def leg_bound_report(diagram):
    """Check that barred legs count the degree, and the leg-count bound.

    Every legal orientation must put exactly `degree` arrow heads on the
    skeleton; a diagram with legs < degree therefore has none.
    """
    oris = legal_orientations(diagram)
    bar_counts = sorted({sum(d.bar_word()) for d in oris})
    report = {
        "legs": diagram.legs,
        "degree": diagram.degree,
        "n_legal": len(oris),
        "bar_counts": bar_counts,
        "bars_equal_degree": all(c == diagram.degree for c in bar_counts),
        "bound_respected": (len(oris) == 0) if diagram.legs < diagram.degree else True,
    }
    return report


def verify_leg_bound(diagram):
    """Push the degree bookkeeping labels along the arrows of one diagram.

    Each edge carries +1, each internal vertex -1.  Pushing every edge
    label to its head end, a legal vertex absorbs exactly one +1 against
    its -1, and the surplus lands on skeleton legs.  The surviving labels
    count the degree, which therefore bounds the number of legs from below.

    Returns {degree, legs, pushed_label_multiset}; the multiset lists the
    nonzero per-leg label totals.  Raises ValueError on an undirected or
    illegal input.
    """
    if not diagram.directed:
        raise ValueError("the label push needs a directed diagram")
    if not diagram.is_legal():
        raise ValueError("orientation is not legal; the label push needs one ingoing edge per vertex")
    leg_total = [0] * diagram.legs
    vertex_total = [-1] * diagram.n_vertices
    for _, head in diagram.edges:
        vs = diagram.vertex_slot(head)
        if vs is None:
            leg_total[head] += 1
        else:
            vertex_total[vs[0]] += 1
    if any(t != 0 for t in vertex_total):
        raise ValueError("orientation is not legal; a vertex absorbed the wrong label count")
    pushed = sorted((t for t in leg_total if t), reverse=True)
    degree = diagram.degree
    if sum(pushed) != degree:
        raise ValueError("pushed labels do not add up to the degree")
    if diagram.legs < degree:
        raise ValueError("fewer legs than degree; no legal orientation should exist")
    return {
        "degree": degree,
        "legs": diagram.legs,
        "pushed_label_multiset": pushed,
    }


# -- concrete rewriting moves ------------------------------------------------


def stu_terms(diagram, leg):
    """Resolve the vertex met by `leg` into its two skeleton attachments.

    Returns [(+1, T), (-1, U)] as concrete diagrams with one vertex fewer
    and one leg more (the old leg position splits into two).  Works for
    directed and undirected diagrams alike.
    """
    if not (0 <= leg < diagram.legs):
        raise ValueError("no leg %r" % (leg,))
    p = diagram.partner(leg)
    vs = diagram.vertex_slot(p)
    if vs is None:
        raise ValueError("leg %d meets another leg; nothing to resolve" % leg)
    v, s = vs
    hes = diagram.vertex_half_edges(v)
    arm1 = hes[(s + 1) % 3]
    arm2 = hes[(s + 2) % 3]
    L = diagram.legs
    new_L = L + 1

    def relabel(h, arm_map):
        if h in arm_map:
            return arm_map[h]
        if h < L:
            return h if h < leg else h + 1
        w, t = diagram.vertex_slot(h)
        w2 = w - 1 if w > v else w
        return new_L + 3 * w2 + t

    terms = []
    for sign, arm_map in (
        (1, {arm1: leg, arm2: leg + 1}),
        (-1, {arm1: leg + 1, arm2: leg}),
    ):
        edges = []
        for a, b in diagram.edges:
            if leg in (a, b):  # the stem edge disappears with the vertex
                continue
            edges.append((relabel(a, arm_map), relabel(b, arm_map)))
        terms.append(
            (
                sign,
                type(diagram)(diagram.skeleton, new_L, diagram.n_vertices - 1, edges),
            )
        )
    return terms


def apply_stu(diagram, leg):
    """STU expansion as a class-level sum: vertex term = +T - U."""
    out = DiagramSum()
    for sign, d in stu_terms(diagram, leg):
        out.add(d, sign)
    return out


def apply_directed_stu(diagram, leg):
    """Directed STU expansion at `leg`, dispatching on the local arrows.

    The vertex met by the leg resolves into (uncrossed) - (crossed)
    attachments; directions ride along.  Three arm patterns can occur at a
    vertex reachable from a leg: both arms outgoing (plain stem letter),
    or one in one out (barred stem letter).  A vertex whose two arms are
    both ingoing encodes a bracket of two barred letters, which vanishes,
    so that expansion returns the empty sum.

    Raises ValueError when the leg meets another leg instead of a vertex.
    """
    if not diagram.directed:
        raise ValueError("directed STU needs a directed diagram")
    if not (0 <= leg < diagram.legs):
        raise ValueError("no leg %r" % (leg,))
    p = diagram.partner(leg)
    vs = diagram.vertex_slot(p)
    if vs is None:
        raise ValueError("leg %d meets another leg; nothing to resolve" % leg)
    v = vs[0]
    arm_heads = sum(
        1
        for h in diagram.vertex_half_edges(v)
        if h != p and diagram.is_head(h)
    )
    if arm_heads == 2:
        return DiagramSum()  # bracket of two barred letters: zero
    return apply_stu(diagram, leg)


def commute_adjacent_legs(diagram, pos):
    """Swap the barred legs at positions pos and pos+1 (cyclically).

    Only barred letters commute, so both legs must be arrow heads.
    Returns the swapped concrete diagram.
    """
    if not diagram.directed:
        raise ValueError("commuting legs is a move on directed diagrams")
    L = diagram.legs
    a = pos % L
    b = (pos + 1) % L
    if diagram.skeleton != CIRCLE and b < a:
        raise ValueError("interval legs do not wrap")
    for leg in (a, b):
        if not diagram.leg_is_bar(leg):
            raise ValueError("leg %d is not barred; it does not commute" % leg)
    swap = {a: b, b: a}
    edges = [(swap.get(x, x), swap.get(y, y)) for x, y in diagram.edges]
    return DirectedJacobiDiagram(diagram.skeleton, L, diagram.n_vertices, edges)


def zero_patterns(diagram):
    """Vertices pointing at two adjacent barred legs: [(vertex, leg, leg)].

    Such a configuration makes the class its own negative (swap the legs:
    a commuting move that also reverses the vertex), so any weight built on
    the doubled algebra kills the diagram.
    """
    if not diagram.directed:
        raise ValueError("zero patterns concern directed diagrams")
    L = diagram.legs
    found = []
    for v in range(diagram.n_vertices):
        legs_hit = []
        for h in diagram.vertex_half_edges(v):
            q = diagram.partner(h)
            if q < L and diagram.leg_is_bar(q) and not diagram.is_head(h):
                legs_hit.append(q)
        for i in range(len(legs_hit)):
            for j in range(len(legs_hit)):
                if i == j:
                    continue
                a, b = legs_hit[i], legs_hit[j]
                if (a + 1) % L == b and (diagram.skeleton == CIRCLE or a + 1 == b):
                    found.append((v, a, b))
    return found


def detect_zero_pattern(diagram):
    """True when some vertex points at two adjacent skeleton positions."""
    return bool(zero_patterns(diagram))


# -- wheels -------------------------------------------------------------------


def directed_wheel(m, orientation=0, skeleton=CIRCLE):
    """The m-wheel with spokes aimed at the skeleton and an oriented hub.

    orientation 0 runs the hub cycle forward (vertex i feeds vertex i+1),
    orientation 1 backward.  Both are legal, and they are the only legal
    orientations of the wheel.
    """
    if m < 2:
        raise ValueError("wheel needs m >= 2")
    if orientation not in (0, 1):
        raise ValueError("orientation must be 0 or 1")
    edges = []
    for i in range(m):
        base = m + 3 * i
        edges.append((base, i))  # spoke: tail at the hub, head on the skeleton
        nxt = m + 3 * ((i + 1) % m) + 1
        if orientation == 0:
            edges.append((base + 2, nxt))
        else:
            edges.append((nxt, base + 2))
    return DirectedJacobiDiagram(skeleton, m, m, edges)


def _transport_plan(diagram):
    """Find a vertex with two barred legs and a forward path between them.

    Returns (start_pos, n_swaps) moving the first leg up to adjacency with
    the second through barred intermediates, or None.
    """
    L = diagram.legs
    for v in range(diagram.n_vertices):
        legs_hit = sorted(
            diagram.partner(h)
            for h in diagram.vertex_half_edges(v)
            if diagram.partner(h) < L
            and diagram.leg_is_bar(diagram.partner(h))
            and not diagram.is_head(h)
        )
        if len(legs_hit) < 2:
            continue
        for a in legs_hit:
            for b in legs_hit:
                if a == b:
                    continue
                gap = (b - a) % L if diagram.skeleton == CIRCLE else b - a
                if gap <= 0:
                    continue
                path = [(a + k) % L for k in range(1, gap)]
                if all(diagram.leg_is_bar(q) for q in path):
                    return a, gap - 1
    return None


def reduce_wheel(m, orientation=0):
    """Drive a directed m-wheel to zero patterns; return a JSON-ready trace.

    One STU step at leg 0 splits the wheel into two terms.  The + term
    shows a zero pattern at once (the hub neighbor now points at two legs
    adjacent around the circle); the - term needs m-2 commuting moves to
    carry its displaced barred leg up against the matching spoke.  Either
    way every terminal diagram carries a zero pattern, so the wheel class
    dies under any weight built on the doubled algebra.
    """
    if m < 2:
        raise ValueError("the reduction needs m >= 2")
    wheel = directed_wheel(m, orientation)
    steps = [
        {
            "op": "start",
            "diagram": wheel.to_json(),
            "legal": wheel.is_legal(),
            "bar_word": list(wheel.bar_word()),
        }
    ]
    terms = stu_terms(wheel, 0)
    steps.append(
        {
            "op": "stu",
            "leg": 0,
            "terms": [{"sign": s, "diagram": d.to_json()} for s, d in terms],
        }
    )
    all_dead = True
    for idx, (sign, term) in enumerate(terms):
        current = term
        moves = 0
        while not zero_patterns(current):
            plan = _transport_plan(current)
            if plan is None or moves > 3 * m:
                all_dead = False
                steps.append({"op": "stuck", "term": idx, "diagram": current.to_json()})
                break
            pos, _ = plan
            current = commute_adjacent_legs(current, pos)
            moves += 1
            steps.append(
                {
                    "op": "commute",
                    "term": idx,
                    "positions": [pos, (pos + 1) % current.legs],
                    "diagram": current.to_json(),
                }
            )
        else:
            zp = zero_patterns(current)[0]
            steps.append(
                {
                    "op": "zero_pattern",
                    "term": idx,
                    "vertex": zp[0],
                    "legs": [zp[1], zp[2]],
                    "commute_moves": moves,
                }
            )
    return {
        "m": m,
        "orientation": orientation,
        "steps": steps,
        "reduced_to_zero": all_dead,
    }


def reduce_wheel_on_circle(m, skeleton=CIRCLE):
    """Run the wheel reduction on the circle for both hub orientations.

    Returns (DiagramSum, trace).  The sum collects whatever terminal terms
    did not die to a zero pattern, so a successful reduction returns the
    empty sum.  The trace records every rewrite step for each orientation.
    Interval skeletons are rejected: the transport move that untangles the
    crossed term walks a leg around the circle.
    """
    if skeleton != CIRCLE:
        raise ValueError("the reduction transports legs around a circle; interval not applicable")
    if m < 2:
        raise ValueError("the reduction needs m >= 2")
    survivors = DiagramSum()
    traces = []
    for orientation in (0, 1):
        trace = reduce_wheel(m, orientation)
        traces.append(trace)
        for step in trace["steps"]:
            if step["op"] == "stuck":
                survivors.add(JacobiDiagram.from_json(step["diagram"]))
    return survivors, {
        "m": m,
        "orientations": traces,
        "reduced_to_zero": all(t["reduced_to_zero"] for t in traces),
    }


def wheel_reduction_checks(m, orientation=0):
    """Structural invariants a reduction trace must satisfy; used by tests.

    Replays `reduce_wheel`, confirming: the wheel is legal with all legs
    barred; exactly one STU step is taken; every commuting move swaps two
    barred legs; both terms end in a zero pattern.
    """
    trace = reduce_wheel(m, orientation)
    ok = trace["reduced_to_zero"]
    zero_terms = {s["term"] for s in trace["steps"] if s["op"] == "zero_pattern"}
    ok = ok and zero_terms == {0, 1}
    start = trace["steps"][0]
    ok = ok and start["legal"] and all(start["bar_word"])
    return ok, trace
