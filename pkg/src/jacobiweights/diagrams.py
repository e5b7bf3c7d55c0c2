"""Trivalent diagrams on a circle or interval skeleton.

A diagram has `legs` skeleton endpoints (numbered 0..legs-1 along the
skeleton; cyclic for a circle, linear for an interval) and `n_vertices`
internal trivalent vertices.  Half-edges are integers: leg i owns half-edge
i, and vertex v owns the consecutive block legs+3v .. legs+3v+2, whose slot
order (0,1,2) *is* the vertex's cyclic orientation.  `edges` is a perfect
matching on half-edges.

Reversing one vertex's cyclic order negates the diagram; two diagrams are
the same class when related by rotating circle legs, renaming vertices and
rotating triples.  `canonicalize` finds a canonical labeled form by
minimizing a traversal stream over all those choices, tracks the sign, and
flags classes that equal minus themselves (sign 0).

Directed diagrams carry an edge direction (tail, head); directions ride
along through canonicalization unchanged by vertex flips.
"""

from __future__ import annotations

from fractions import Fraction

CIRCLE = "circle"
INTERVAL = "interval"


class JacobiDiagram:
    """Undirected trivalent diagram on a skeleton; immutable once built."""

    directed = False

    def __init__(self, skeleton, legs, n_vertices, edges):
        if skeleton not in (CIRCLE, INTERVAL):
            raise ValueError("skeleton must be %r or %r" % (CIRCLE, INTERVAL))
        if legs < 0:
            raise ValueError("legs must be >= 0")
        if n_vertices < 0:
            raise ValueError("n_vertices must be >= 0")
        total = legs + 3 * n_vertices
        if total % 2:
            raise ValueError("odd number of half-edges (%d); no perfect matching" % total)
        self.skeleton = skeleton
        self.legs = legs
        self.n_vertices = n_vertices
        seen = set()
        norm = []
        for e in edges:
            a, b = e
            for h in (a, b):
                if not (isinstance(h, int) and 0 <= h < total):
                    raise ValueError("half-edge %r out of range in edge %r" % (h, e))
                if h in seen:
                    raise ValueError("half-edge %d used by two edges" % h)
                seen.add(h)
            if a == b:
                raise ValueError("edge %r joins a half-edge to itself" % (e,))
            norm.append(self._orient_edge(a, b))
        if len(seen) != total:
            free = min(h for h in range(total) if h not in seen)
            raise ValueError("half-edge %d is not matched by any edge" % free)
        self.edges = tuple(sorted(norm))
        self._partner = {}
        for a, b in self.edges:
            self._partner[a] = b
            self._partner[b] = a

    @staticmethod
    def _orient_edge(a, b):
        return (a, b) if a < b else (b, a)

    # -- structure queries ------------------------------------------------

    @property
    def total_half_edges(self):
        return self.legs + 3 * self.n_vertices

    @property
    def degree(self):
        return len(self.edges) - self.n_vertices

    def partner(self, h):
        return self._partner[h]

    def vertex_slot(self, h):
        """(vertex, slot) owning half-edge h, or None when h is a leg."""
        if h < self.legs:
            return None
        i = h - self.legs
        return (i // 3, i % 3)

    def vertex_half_edges(self, v):
        b = self.legs + 3 * v
        return (b, b + 1, b + 2)

    def is_connected(self):
        """Connected when the skeleton is counted as one node tying all legs."""
        if self.n_vertices == 0:
            return True
        reached = set()
        frontier = []
        for leg in range(self.legs):
            vs = self.vertex_slot(self.partner(leg))
            if vs and vs[0] not in reached:
                reached.add(vs[0])
                frontier.append(vs[0])
        while frontier:
            v = frontier.pop()
            for h in self.vertex_half_edges(v):
                vs = self.vertex_slot(self.partner(h))
                if vs and vs[0] not in reached:
                    reached.add(vs[0])
                    frontier.append(vs[0])
        return len(reached) == self.n_vertices

    def validate(self):
        """Enforce the full class invariants; returns self.

        The constructor only checks the matching structure.  A diagram meant
        to live in the quotient algebra must additionally be connected
        (counting the skeleton as one node) and have degree >= 1.
        """
        if not self.is_connected():
            raise ValueError("diagram has a component disjoint from the skeleton")
        if self.degree < 1:
            raise ValueError("degree must be >= 1, got %d" % self.degree)
        return self

    def is_primitive(self):
        """Connected even after the skeleton is deleted (legs become loose ends)."""
        nodes = self.legs + self.n_vertices
        if nodes == 0:
            return False

        def node_of(h):
            return h if h < self.legs else self.legs + self.vertex_slot(h)[0]

        reached = {0}
        frontier = [0]
        while frontier:
            nd = frontier.pop()
            hs = (nd,) if nd < self.legs else self.vertex_half_edges(nd - self.legs)
            for h in hs:
                other = node_of(self.partner(h))
                if other not in reached:
                    reached.add(other)
                    frontier.append(other)
        return len(reached) == nodes

    # -- serialization ----------------------------------------------------

    def to_json(self):
        """Exchange form: explicit leg and vertex half-edge ids.

        {"skeleton": ..., "legs": [h, ...], "vertices": [[h,h,h], ...],
         "edges": [[h,h], ...]} with a "directions" list of [tail, head]
        pairs when the diagram is directed.
        """
        obj = {
            "skeleton": self.skeleton,
            "legs": list(range(self.legs)),
            "vertices": [list(self.vertex_half_edges(v)) for v in range(self.n_vertices)],
            "edges": sorted(sorted(e) for e in self.edges),
        }
        if self.directed:
            obj["directions"] = sorted([t, h] for t, h in self.edges)
        return obj

    @classmethod
    def from_json(cls, obj):
        """Parse the exchange form, remapping arbitrary half-edge ids.

        Validates the full set of invariants (matching structure via the
        constructor, then connectivity and degree) and raises ValueError on
        the first violation.
        """
        skeleton = obj["skeleton"]
        leg_ids = list(obj["legs"])
        vertex_triples = [tuple(t) for t in obj["vertices"]]
        if any(len(t) != 3 for t in vertex_triples):
            raise ValueError("every internal vertex needs exactly 3 half-edges")
        remap = {}
        for pos, h in enumerate(leg_ids):
            if h in remap:
                raise ValueError("half-edge %r listed twice" % (h,))
            remap[h] = pos
        L = len(leg_ids)
        for v, triple in enumerate(vertex_triples):
            for slot, h in enumerate(triple):
                if h in remap:
                    raise ValueError("half-edge %r listed twice" % (h,))
                remap[h] = L + 3 * v + slot
        directions = obj.get("directions")
        if directions is not None:
            pair_set = {frozenset(e) for e in directions}
            edge_set = {frozenset(e) for e in obj["edges"]}
            if pair_set != edge_set:
                raise ValueError("directions do not cover exactly the edge set")
            raw_edges = directions
            klass = DirectedJacobiDiagram
        else:
            raw_edges = obj["edges"]
            klass = JacobiDiagram
        try:
            edges = [(remap[a], remap[b]) for a, b in raw_edges]
        except KeyError as missing:
            raise ValueError("edge uses unknown half-edge %r" % (missing.args[0],))
        return klass(skeleton, L, len(vertex_triples), edges).validate()

    def __eq__(self, other):
        return (
            isinstance(other, JacobiDiagram)
            and self.directed == other.directed
            and self.skeleton == other.skeleton
            and self.legs == other.legs
            and self.n_vertices == other.n_vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.directed, self.skeleton, self.legs, self.n_vertices, self.edges))

    def __repr__(self):
        return "<%s %s legs=%d vertices=%d degree=%d>" % (
            type(self).__name__,
            self.skeleton,
            self.legs,
            self.n_vertices,
            self.degree,
        )


class DirectedJacobiDiagram(JacobiDiagram):
    """Diagram whose edges are ordered (tail, head) pairs.

    A leg whose half-edge is an edge head carries a barred letter; an
    internal vertex is legal when exactly one of its three half-edges is a
    head.  Legality is a query, not a construction invariant, so rewriting
    steps may pass through illegal intermediates deliberately.
    """

    directed = True

    def __init__(self, skeleton, legs, n_vertices, edges):
        super().__init__(skeleton, legs, n_vertices, edges)
        self._heads = frozenset(hd for _, hd in self.edges)

    @staticmethod
    def _orient_edge(a, b):
        return (a, b)

    def is_head(self, h):
        """True when h is the head endpoint of its edge."""
        if h not in self._partner:
            raise KeyError(h)
        return h in self._heads

    def _is_head(self, h):
        return h in self._heads

    def head_count(self, v):
        return sum(1 for h in self.vertex_half_edges(v) if self._is_head(h))

    def is_legal(self):
        """Every internal vertex has exactly one ingoing (head) half-edge."""
        return all(self.head_count(v) == 1 for v in range(self.n_vertices))

    def leg_is_bar(self, leg):
        """Leg letters: barred iff the arrow points into the skeleton."""
        return self._is_head(leg)

    def bar_word(self):
        """Tuple of per-leg bar flags in skeleton order."""
        return tuple(self._is_head(leg) for leg in range(self.legs))

    def forget_directions(self):
        return JacobiDiagram(self.skeleton, self.legs, self.n_vertices, self.edges)


# -- canonical form --------------------------------------------------------


def canonical_form(diagram):
    """Canonical (key, sign, representative) for a diagram class.

    The key is a self-describing traversal stream (rebuildable via
    `diagram_from_key`), minimal over circle rotations and per-vertex triple
    rotations/reversals.  `sign` satisfies  class(diagram) = sign *
    class(representative);  sign 0 means the class equals its own negative
    and is therefore zero.  Raises ValueError when some component never
    touches the skeleton (no traversal root exists for it).
    """
    n_edges = len(diagram.edges)
    if n_edges == 0:
        return _key_string(diagram, ()), 1, diagram
    if diagram.legs == 0:
        raise ValueError("diagram has a component disjoint from the skeleton")
    rotations = range(diagram.legs) if diagram.skeleton == CIRCLE else (0,)
    box = {"stream": None, "signs": set(), "stalled": False}
    for rot in rotations:
        state = {
            "stream": [],
            "sign": 1,
            "cmp_eq": True,
            "consumed": set(),
            "vslot": {},
            "nvert": 0,
            "queue": [],
            "qi": 0,
            "pi": 0,
        }
        _advance(diagram, rot, state, box)
    if box["stalled"] or box["stream"] is None:
        raise ValueError("diagram has a component disjoint from the skeleton")
    stream = tuple(box["stream"])
    sign = 0 if len(box["signs"]) == 2 else box["signs"].pop()
    rep = _replay(diagram.skeleton, diagram.legs, stream, diagram.directed)
    return _key_string(rep, stream), sign, rep


def canonicalize(diagram):
    """(key, sign) of the diagram's class; see `canonical_form`."""
    key, sign, _ = canonical_form(diagram)
    return key, sign


def _advance(diagram, rot, state, box):
    L = diagram.legs
    circle = diagram.skeleton == CIRCLE
    consumed = state["consumed"]
    while True:
        h = None
        while state["pi"] < L:
            cand = (state["pi"] + rot) % L if circle else state["pi"]
            state["pi"] += 1
            if cand not in consumed:
                h = cand
                break
        if h is None:
            q = state["queue"]
            while state["qi"] < len(q) and q[state["qi"]] in consumed:
                state["qi"] += 1
            if state["qi"] < len(q):
                h = q[state["qi"]]
                state["qi"] += 1
            else:
                break
        p = diagram.partner(h)
        bit = 0
        if diagram.directed:
            bit = 1 if diagram._is_head(h) else 0
        consumed.add(h)
        consumed.add(p)
        if p < L:
            pos = (p - rot) % L if circle else p
            if not _push(state, (0, pos, 0, bit), box):
                return
            continue
        known = state["vslot"].get(p)
        if known is not None:
            if not _push(state, (2, known[0], known[1], bit), box):
                return
            continue
        # new vertex: fork over the two cyclic readings of its triple
        v, s = diagram.vertex_slot(p)
        hes = diagram.vertex_half_edges(v)
        for step in (1, 2):
            sub = {
                "stream": list(state["stream"]),
                "sign": state["sign"] * (1 if step == 1 else -1),
                "cmp_eq": state["cmp_eq"],
                "consumed": set(consumed),
                "vslot": dict(state["vslot"]),
                "nvert": state["nvert"],
                "queue": list(state["queue"]),
                "qi": state["qi"],
                "pi": state["pi"],
            }
            vid = sub["nvert"]
            sub["nvert"] += 1
            order = (s, (s + step) % 3, (s + 2 * step) % 3)
            for k, slot in enumerate(order):
                sub["vslot"][hes[slot]] = (vid, k)
            sub["queue"].append(hes[order[1]])
            sub["queue"].append(hes[order[2]])
            if not _push(sub, (1, vid, 0, bit), box):
                continue
            _advance(diagram, rot, sub, box)
        return
    # expansion exhausted
    if len(consumed) != diagram.total_half_edges:
        box["stalled"] = True
        return
    # cmp_eq only gates pruning; it can be stale once the best stream has
    # been replaced mid-search, so the winner must be decided by a full
    # comparison here (streams are one token per edge, this is cheap)
    stream = state["stream"]
    best = box["stream"]
    if best is None or stream < best:
        box["stream"] = stream
        box["signs"] = {state["sign"]}
    elif stream == best:
        box["signs"].add(state["sign"])


def _push(state, tok, box):
    """Append a token; prune (False) when the prefix already exceeds the best."""
    state["stream"].append(tok)
    if box["stream"] is not None and state["cmp_eq"]:
        ref = box["stream"]
        i = len(state["stream"]) - 1
        if i >= len(ref) or tok > ref[i]:
            return False
        if tok < ref[i]:
            state["cmp_eq"] = False
    return True


def _replay(skeleton, legs, stream, directed):
    """Rebuild the diagram encoded by a traversal stream."""
    n_vertices = sum(1 for t in stream if t[0] == 1)
    consumed = set()
    edges = []
    queue = []
    pi = 0
    qi = 0

    def he_of(vid, slot):
        return legs + 3 * vid + slot

    for kind, a, b, bit in stream:
        h = None
        while pi < legs:
            if pi not in consumed:
                h = pi
                break
            pi += 1
        if h is None:
            while qi < len(queue) and queue[qi] in consumed:
                qi += 1
            if qi >= len(queue):
                raise ValueError("stream expands past the diagram it encodes")
            h = queue[qi]
            qi += 1
        if kind == 0:
            p = a
        elif kind == 1:
            p = he_of(a, 0)
            queue.append(he_of(a, 1))
            queue.append(he_of(a, 2))
        elif kind == 2:
            p = he_of(a, b)
        else:
            raise ValueError("bad stream token kind %r" % kind)
        if p in consumed or p == h:
            raise ValueError("stream reuses half-edge %d" % p)
        consumed.add(h)
        consumed.add(p)
        edges.append((p, h) if (directed and bit) else (h, p))
    klass = DirectedJacobiDiagram if directed else JacobiDiagram
    return klass(skeleton, legs, n_vertices, edges)


def _key_string(diagram, stream):
    toks = []
    for kind, a, b, bit in stream:
        if kind == 0:
            t = "s%d" % a
        elif kind == 1:
            t = "v%d" % a
        else:
            t = "r%d_%d" % (a, b)
        if diagram.directed:
            t += "^" if bit else "-"
        toks.append(t)
    head = "D" if diagram.directed else ""
    head += "C" if diagram.skeleton == CIRCLE else "I"
    return "%s%d:%s" % (head, diagram.legs, ",".join(toks))


def diagram_from_key(key):
    """Inverse of the key produced by `canonicalize`."""
    directed = key.startswith("D")
    if directed:
        key = key[1:]
    if not key or key[0] not in "CI":
        raise ValueError("bad diagram key")
    skeleton = CIRCLE if key[0] == "C" else INTERVAL
    head, _, body = key[1:].partition(":")
    legs = int(head)
    stream = []
    if body:
        for t in body.split(","):
            bit = 0
            if directed:
                bit = 1 if t.endswith("^") else 0
                t = t[:-1]
            if t[0] == "s":
                stream.append((0, int(t[1:]), 0, bit))
            elif t[0] == "v":
                stream.append((1, int(t[1:]), 0, bit))
            elif t[0] == "r":
                a, b = t[1:].split("_")
                stream.append((2, int(a), int(b), bit))
            else:
                raise ValueError("bad stream token %r" % t)
    return _replay(skeleton, legs, tuple(stream), directed)


def diagram_key(diagram):
    return canonicalize(diagram)[0]


def degree(diagram):
    """(#internal edges) - (#internal vertices)."""
    return diagram.degree


def external_leg_count(diagram):
    """Number of skeleton attachment points."""
    return diagram.legs


# -- linear combinations ----------------------------------------------------


class DiagramSum:
    """Rational linear combination of diagram classes, canonical-keyed.

    Adding a diagram routes through `canonicalize`, so classes that equal
    their own negative drop out immediately and isomorphic diagrams merge.
    """

    def __init__(self):
        self._terms = {}

    @classmethod
    def single(cls, diagram, coeff=1):
        out = cls()
        out.add(diagram, coeff)
        return out

    def add(self, diagram, coeff=1):
        coeff = Fraction(coeff)
        if coeff == 0:
            return self
        key, sign, rep = canonical_form(diagram)
        if sign == 0:
            return self
        entry = self._terms.get(key)
        if entry is None:
            self._terms[key] = [coeff * sign, rep]
        else:
            entry[0] += coeff * sign
            if entry[0] == 0:
                del self._terms[key]
        return self

    def add_sum(self, other, scale=1):
        scale = Fraction(scale)
        for key, (c, rep) in other._terms.items():
            entry = self._terms.get(key)
            if entry is None:
                self._terms[key] = [c * scale, rep]
            else:
                entry[0] += c * scale
                if entry[0] == 0:
                    del self._terms[key]
        return self

    def scaled(self, scale):
        out = DiagramSum()
        out.add_sum(self, scale)
        return out

    def __add__(self, other):
        out = DiagramSum()
        out.add_sum(self)
        out.add_sum(other)
        return out

    def items(self):
        """(diagram, coeff) pairs in deterministic key order."""
        return [(rep, c) for key, (c, rep) in sorted(self._terms.items())]

    def coeff_of(self, diagram):
        key, sign = canonicalize(diagram)
        if sign == 0:
            return Fraction(0)
        entry = self._terms.get(key)
        return entry[0] * sign if entry else Fraction(0)

    def keys(self):
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return {k: v[0] for k, v in self._terms.items()} == {
            k: v[0] for k, v in other._terms.items()
        }

    def __repr__(self):
        inner = ", ".join("%s*%s" % (c, k) for k, (c, _) in sorted(self._terms.items()))
        return "DiagramSum{%s}" % inner

    def to_json(self):
        return [
            {"coeff": str(c), "diagram": rep.to_json(), "key": key}
            for key, (c, rep) in sorted(self._terms.items())
        ]


# -- standard diagrams ------------------------------------------------------


def make_theta_power(k, skeleton=CIRCLE):
    """k side-by-side chords (no crossings): positions (0,1), (2,3), ...

    k=1 is the single-chord diagram.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = [(2 * i, 2 * i + 1) for i in range(k)]
    return JacobiDiagram(skeleton, 2 * k, 0, edges)


def make_chord_diagram(pairing, skeleton=CIRCLE):
    """Chord diagram from a pairing of leg positions, e.g. [(0,2),(1,3)]."""
    legs = 2 * len(pairing)
    return JacobiDiagram(skeleton, legs, 0, [tuple(p) for p in pairing])


def make_wheel(m, skeleton=CIRCLE):
    """The m-wheel: m skeleton legs, spokes to an m-cycle hub.

    Hub vertex i has slots (spoke, from previous, to next); spokes attach to
    legs in skeleton order.  m must be >= 2 (a 1-wheel's hub arc would join
    two half-edges of one vertex, a tadpole, which is a zero class).
    """
    if m < 2:
        raise ValueError("wheel needs m >= 2")
    edges = []
    for i in range(m):
        base = m + 3 * i
        edges.append((i, base))  # spoke
        nxt = m + 3 * ((i + 1) % m) + 1
        edges.append((base + 2, nxt))  # hub arc i -> i+1
    return JacobiDiagram(skeleton, m, m, edges)


def make_tripod(skeleton=CIRCLE):
    """One internal vertex with three legs (degree 2)."""
    return JacobiDiagram(skeleton, 3, 1, [(0, 3), (1, 4), (2, 5)])


def permute_legs(diagram, sigma):
    """Move the attachment at position i to position sigma[i].

    The internal graph is untouched; only the skeleton order of the legs
    changes.  sigma must be a permutation of range(legs).  Directions, if
    present, follow the relabeling.
    """
    L = diagram.legs
    if sorted(sigma) != list(range(L)):
        raise ValueError("sigma is not a permutation of the %d legs" % L)

    def f(h):
        return sigma[h] if h < L else h

    edges = [(f(a), f(b)) for a, b in diagram.edges]
    return type(diagram)(diagram.skeleton, L, diagram.n_vertices, edges)


def close_interval(diagram):
    """Glue the interval's endpoints: same data on a circle skeleton."""
    if diagram.skeleton != INTERVAL:
        raise ValueError("close_interval expects an interval diagram")
    klass = type(diagram)
    return klass(CIRCLE, diagram.legs, diagram.n_vertices, diagram.edges)


def cut_circle(diagram, at=0):
    """Cut a circle just before leg position `at`, yielding an interval.

    Leg order becomes at, at+1, ..., at-1.
    """
    if diagram.skeleton != CIRCLE:
        raise ValueError("cut_circle expects a circle diagram")
    L = diagram.legs
    if L == 0:
        return type(diagram)(INTERVAL, 0, diagram.n_vertices, diagram.edges)
    at %= L
    relabel = {old: (old - at) % L for old in range(L)}

    def m(h):
        return relabel[h] if h < L else h

    edges = [(m(a), m(b)) for a, b in diagram.edges]
    return type(diagram)(INTERVAL, L, diagram.n_vertices, edges)
