"""Weight evaluation of trivalent diagrams against a Lie algebra.

Every diagram turns into a small tensor network: one structure-constant
tensor per internal vertex, one inverse-metric tensor per edge, one
representation tensor per skeleton leg.  Interval diagrams keep their leg
indices free and land in enveloping-algebra words (`contract_l`); circle
diagrams chain the leg matrices around the skeleton and close the trace
(`weight_circle`).

Directed diagrams restrict each edge tensor to its (tail: plain, head:
barred) block of the doubled algebra's pairing.  Summing that restricted
contraction over all legal orientations reproduces the unrestricted
contraction, because the doubled pairing only couples plain to barred and
the doubled structure constants vanish unless exactly one index is barred;
`directed_weight_sum` computes the left side of that identity.

Contraction order is greedy: repeatedly merge the pair of tensors whose
contraction leaves the fewest free axes.  Results are exact rationals and
independent of the order.
"""

from __future__ import annotations

from fractions import Fraction

from . import _core
from .algebras import DoubleAlgebra
from .diagrams import CIRCLE, INTERVAL


# -- tensor network ----------------------------------------------------------


def _self_trace_node(tensor, labels):
    """Contract any label appearing twice on one node against itself."""
    while True:
        seen = {}
        pair = None
        for pos, lab in enumerate(labels):
            if lab in seen:
                pair = (seen[lab], pos)
                break
            seen[lab] = pos
        if pair is None:
            return tensor, labels
        tensor = _core.self_trace(tensor, len(labels), [pair])
        labels = [l for i, l in enumerate(labels) if i not in pair]


def contract_network(nodes, out_labels):
    """Contract a list of (tensor, labels) down to the free `out_labels`.

    Every label must appear exactly twice among the nodes (summed over) or
    exactly once (kept free, listed in out_labels).  Returns a dict keyed
    by index tuples in out_labels order; {} encodes the zero tensor.
    """
    work = []
    for tensor, labels in nodes:
        tensor, labels = _self_trace_node(dict(tensor), list(labels))
        if not tensor:
            return {}
        work.append((tensor, labels))
    if not work:
        work.append(({(): Fraction(1)}, []))
    while len(work) > 1:
        best = None
        for i in range(len(work)):
            li = set(work[i][1])
            for j in range(i + 1, len(work)):
                shared = li.intersection(work[j][1])
                if not shared:
                    continue
                rank = len(work[i][1]) + len(work[j][1]) - 2 * len(shared)
                cost = len(work[i][0]) * len(work[j][0])
                if best is None or (rank, cost) < best[:2]:
                    best = (rank, cost, i, j)
        if best is None:
            # disconnected pieces: outer product of the two smallest
            order = sorted(range(len(work)), key=lambda k: len(work[k][0]))
            i, j = sorted(order[:2])
        else:
            i, j = best[2], best[3]
        (ta, la), (tb, lb) = work[i], work[j]
        pairs = [(la.index(lab), lb.index(lab)) for lab in la if lab in set(lb)]
        merged = _core.contract(ta, len(la), tb, len(lb), pairs)
        a_used = {p for p, _ in pairs}
        b_used = {q for _, q in pairs}
        labels = [l for k, l in enumerate(la) if k not in a_used] + [
            l for k, l in enumerate(lb) if k not in b_used
        ]
        merged, labels = _self_trace_node(merged, labels)
        if not merged:
            return {}
        del work[j], work[i]
        work.append((merged, labels))
    tensor, labels = work[0]
    if sorted(labels, key=repr) != sorted(out_labels, key=repr):
        raise ValueError("network free labels %r do not match %r" % (labels, out_labels))
    if labels != list(out_labels):
        perm = [labels.index(lab) for lab in out_labels]
        tensor = _core.permute_axes(tensor, perm)
    return tensor


def _edge_tensor(algebra, directed):
    """Pairing tensor for one edge; directed edges keep only (plain, bar)."""
    full = algebra.edge_tensor()
    if not directed:
        return full
    d = algebra.base_dim
    return {(p, q): v for (p, q), v in full.items() if p < d <= q}


def _diagram_nodes(diagram, algebra):
    """Vertex and edge tensors of the diagram's internal part."""
    if diagram.directed and not isinstance(algebra, DoubleAlgebra):
        raise ValueError("directed contraction needs the doubled algebra")
    nodes = []
    vt = algebra.vertex_tensor()
    for v in range(diagram.n_vertices):
        h0, h1, h2 = diagram.vertex_half_edges(v)
        nodes.append((vt, [("h", h0), ("h", h1), ("h", h2)]))
    et = _edge_tensor(algebra, diagram.directed)
    for a, b in diagram.edges:
        nodes.append((et, [("h", a), ("h", b)]))
    return nodes


# -- the l map: interval diagrams to enveloping words -------------------------


class EnvelopingTensor:
    """Sum of slot-tuples of words with rational coefficients.

    Arity m means every term is an m-tuple of words; a word is a tuple of
    basis indices of the ambient algebra.  Arity 1 carries elements of the
    enveloping algebra itself.  Words are kept raw: no reordering or
    normalization is applied (consumers act on words directly).
    """

    def __init__(self, arity, terms, algebra=None):
        if arity < 1:
            raise ValueError("arity must be >= 1")
        self.arity = arity
        self.algebra = algebra
        clean = {}
        for key, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            key = tuple(tuple(w) for w in key)
            if len(key) != arity:
                raise ValueError("term %r does not have %d slots" % (key, arity))
            clean[key] = clean.get(key, Fraction(0)) + coeff
        self.terms = {k: c for k, c in clean.items() if c}

    def items(self):
        return sorted(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EnvelopingTensor):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __repr__(self):
        return "<EnvelopingTensor arity=%d terms=%d>" % (self.arity, len(self.terms))

    def map_coeffs(self, f):
        return EnvelopingTensor(
            self.arity, {k: f(c) for k, c in self.terms.items()}, self.algebra
        )

    def to_json(self):
        """Arity 1 dumps as [{word, coeff}]; higher arity uses a words list."""
        if self.arity == 1:
            return [
                {"word": list(k[0]), "coeff": str(c)} for k, c in self.items()
            ]
        return [
            {"words": [list(w) for w in k], "coeff": str(c)} for k, c in self.items()
        ]


def contract_l(diagram, algebra):
    """Label and contract an interval diagram into enveloping words.

    The structure constants sit at vertices, the inverse pairing on edges,
    and the surviving free indices line up along the interval in leg order,
    giving an arity-1 EnvelopingTensor.  Directed diagrams need a
    DoubleAlgebra; their words carry a barred letter exactly where an arrow
    points at the skeleton.
    """
    if diagram.skeleton != INTERVAL:
        raise ValueError("contract_l works on interval diagrams; circles close traces (weight_circle)")
    nodes = _diagram_nodes(diagram, algebra)
    out_labels = [("h", i) for i in range(diagram.legs)]
    tensor = contract_network(nodes, out_labels)
    return EnvelopingTensor(1, {(key,): v for key, v in tensor.items()}, algebra)


# -- circle weights ------------------------------------------------------------


def weight_circle(diagram, algebra, rho):
    """Trace of the contracted diagram in the representation rho.

    The legs multiply around the circle in skeleton order and the trace
    closes the chain, so the value is invariant under rotating the starting
    leg.  Exact rational.
    """
    if diagram.skeleton != CIRCLE:
        raise ValueError("weight_circle works on circle diagrams")
    if rho.algebra.dim != algebra.dim:
        raise ValueError(
            "representation of %s does not match algebra %s" % (rho.algebra.name, algebra.name)
        )
    L = diagram.legs
    if L == 0:
        if diagram.edges:
            raise ValueError("diagram has a component disjoint from the skeleton")
        return Fraction(rho.dim)
    nodes = _diagram_nodes(diagram, algebra)
    rt = rho.tensor()
    for i in range(L):
        nodes.append((rt, [("h", i), ("m", i), ("m", (i + 1) % L)]))
    tensor = contract_network(nodes, [])
    return tensor.get((), Fraction(0))


def directed_weight_sum(diagram, algebra, rho):
    """Sum the restricted contraction over all legal orientations.

    Equals weight_circle(diagram, algebra, rho): the doubled pairing admits
    one barred end per edge and the structure constants force one ingoing
    edge per vertex, so the unrestricted contraction splits exactly into
    the legal orientations' restricted ones.
    """
    from .orientations import legal_orientations

    if not isinstance(algebra, DoubleAlgebra):
        raise ValueError("the orientation scheme needs the doubled algebra")
    if diagram.directed:
        raise ValueError("pass the undirected diagram; orientations are enumerated here")
    total = Fraction(0)
    for oriented in legal_orientations(diagram):
        total += weight_circle(oriented, algebra, rho)
    return total


def evaluate_sum(dsum, algebra, rho):
    """Weight of a DiagramSum on the circle: coefficient-weighted traces."""
    total = Fraction(0)
    for rep, coeff in dsum.items():
        total += coeff * weight_circle(rep, algebra, rho)
    return total


def interval_image(diagram, algebra, rho):
    """Matrix image of an interval diagram: sum of rho(word) over contract_l.

    Returns a sparse {(row, col): Fraction} matrix.  Unlike circle traces,
    this keeps the two ends open, so it distinguishes classes whose traces
    all vanish; tests use it to check rewrite moves do not change values.
    """
    out = {}
    for (word,), coeff in contract_l(diagram, algebra).terms.items():
        for rc, v in rho.apply_word(word).items():
            s = out.get(rc, Fraction(0)) + coeff * v
            if s:
                out[rc] = s
            elif rc in out:
                del out[rc]
    return out


# -- word-level normal form (verification tool) --------------------------------


def pbw_normal_form(terms, algebra):
    """Rewrite enveloping words to weakly increasing basis order.

    Repeatedly replaces a descending adjacent pair X_b X_a (b > a) by
    X_a X_b + [X_b, X_a], which terminates and yields the unique normal
    form.  `terms` maps words to coefficients (an arity-1 EnvelopingTensor's
    terms with the singleton slot unwrapped also works).  This is a
    verification tool: two tensors are congruent in the enveloping algebra
    iff their normal forms agree.
    """
    if isinstance(terms, EnvelopingTensor):
        if terms.arity != 1:
            raise ValueError("normal form applies to arity-1 tensors")
        terms = {k[0]: c for k, c in terms.terms.items()}
    memo = {}

    def normalize(word):
        cached = memo.get(word)
        if cached is not None:
            return cached
        for i in range(len(word) - 1):
            b, a = word[i], word[i + 1]
            if b > a:
                head, tail = word[:i], word[i + 2:]
                out = dict(normalize(head + (a, b) + tail))
                for k, c in algebra.bracket(b, a).items():
                    for w2, c2 in normalize(head + (k,) + tail).items():
                        s = out.get(w2, Fraction(0)) + c * c2
                        if s:
                            out[w2] = s
                        elif w2 in out:
                            del out[w2]
                memo[word] = out
                return out
        memo[word] = {word: Fraction(1)}
        return memo[word]

    total = {}
    for word, coeff in terms.items():
        coeff = Fraction(coeff)
        if not coeff:
            continue
        for w2, c2 in normalize(tuple(word)).items():
            s = total.get(w2, Fraction(0)) + coeff * c2
            if s:
                total[w2] = s
            elif w2 in total:
                del total[w2]
    return total
