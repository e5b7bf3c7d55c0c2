"""Independent brute-force evaluators used only by the tests.

Everything here works on dense Fraction matrices and exhaustive index
assignments, with its own basis ordering (column-major matrix units, not
the package's row-major choice).  Diagrams come in as the JSON exchange
form.  Agreement with the package is then a real cross-check of the
sparse tensor machinery, not an echo of shared code.

Weights are basis-independent scalars, so the deliberate basis mismatch
costs nothing and buys independence.
"""

from fractions import Fraction
from itertools import product

Z = Fraction(0)
ONE = Fraction(1)


# -- dense exact linear algebra -------------------------------------------------


def zeros(r, c):
    return [[Z] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            v = ai[k]
            if v:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += v * bk[j]
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_comm(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def invert(m):
    n = len(m)
    aug = [list(m[r]) + [ONE if c == r else Z for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        s = ONE / aug[col][col]
        aug[col] = [x * s for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- algebras from their defining matrices --------------------------------------


class OracleAlgebra:
    """dim, defining matrices, metric data, lowered bracket tensor f."""

    def __init__(self, mats, base_dim=None, rep_mats=None):
        self.dim = len(mats)
        self.mats = mats
        self.base_dim = base_dim  # set for a double: plain < base_dim <= bar
        self.metric = [
            [trace(mat_mul(a, b)) for b in mats] for a in mats
        ] if base_dim is None else None
        self.rep_mats = rep_mats if rep_mats is not None else mats

    def finish(self):
        self.inv = invert(self.metric)
        self.f = {}
        for a in range(self.dim):
            for b in range(self.dim):
                comm = mat_comm(self.mats[a], self.mats[b])
                for c in range(self.dim):
                    v = trace(mat_mul(comm, self.mats[c]))
                    if v:
                        self.f[(a, b, c)] = v
        self.edge_support = [
            (a, b, self.inv[a][b])
            for a in range(self.dim)
            for b in range(self.dim)
            if self.inv[a][b]
        ]
        return self


def oracle_gl(n):
    mats = []
    for j in range(n):          # column-major on purpose
        for i in range(n):
            m = zeros(n, n)
            m[i][j] = ONE
            mats.append(m)
    return OracleAlgebra(mats).finish()


def oracle_sl2():
    e = [[Z, ONE], [Z, Z]]
    f = [[Z, Z], [ONE, Z]]
    h = [[ONE, Z], [Z, -ONE]]
    return OracleAlgebra([e, f, h]).finish()


def oracle_double(base):
    """Plain copy 0..d-1, abelian bar copy d..2d-1, hyperbolic pairing.

    The bar copy has no faithful matrix model inside the base, so f and the
    metric are assembled from the base data by the grading rules instead of
    dense commutators.
    """
    d = base.dim
    dbl = OracleAlgebra([None] * (2 * d), base_dim=d)
    M = zeros(2 * d, 2 * d)
    for a in range(d):
        for b in range(d):
            M[a][b + d] = base.metric[a][b]
            M[a + d][b] = base.metric[a][b]
    dbl.metric = M
    dbl.inv = invert(M)
    # bracket coefficients of the base via metric duality, then graded f
    c_base = {}
    for a in range(d):
        for b in range(d):
            comm = mat_comm(base.mats[a], base.mats[b])
            for k in range(d):
                v = sum(
                    base.inv[k][l] * trace(mat_mul(comm, base.mats[l]))
                    for l in range(d)
                )
                if v:
                    c_base[(a, b, k)] = v

    def dbr(A, B):
        if A < d and B < d:
            return {k: v for (x, y, k), v in c_base.items() if (x, y) == (A, B)}
        if A < d <= B:
            return {k + d: v for (x, y, k), v in c_base.items() if (x, y) == (A, B - d)}
        if B < d <= A:
            return {k + d: v for (x, y, k), v in c_base.items() if (x, y) == (A - d, B)}
        return {}

    dbl.f = {}
    for A in range(2 * d):
        for B in range(2 * d):
            for k, v in dbr(A, B).items():
                for C in range(2 * d):
                    if M[k][C]:
                        s = dbl.f.get((A, B, C), Z) + v * M[k][C]
                        if s:
                            dbl.f[(A, B, C)] = s
                        elif (A, B, C) in dbl.f:
                            del dbl.f[(A, B, C)]
    dbl.dbr = dbr
    dbl.edge_support = [
        (a, b, dbl.inv[a][b])
        for a in range(2 * d)
        for b in range(2 * d)
        if dbl.inv[a][b]
    ]
    # R on V (+) V: plain diagonal, bar upper-right
    n = len(base.mats[0])
    reps = []
    for i in range(d):
        m = zeros(2 * n, 2 * n)
        for r in range(n):
            for c in range(n):
                m[r][c] = base.mats[i][r][c]
                m[r + n][c + n] = base.mats[i][r][c]
        reps.append(m)
    for i in range(d):
        m = zeros(2 * n, 2 * n)
        for r in range(n):
            for c in range(n):
                m[r][c + n] = base.mats[i][r][c]
        reps.append(m)
    dbl.rep_mats = reps
    return dbl


# -- brute-force diagram contraction --------------------------------------------


def _layout(djson):
    """Ownership maps straight from the exchange form."""
    owner = {}
    for pos, h in enumerate(djson["legs"]):
        owner[h] = ("leg", pos)
    for v, triple in enumerate(djson["vertices"]):
        for slot, h in enumerate(triple):
            owner[h] = ("vertex", v, slot)
    return owner


def _assignments(djson, alg):
    """Yield (index map, scalar factor) over all nonzero edge labelings.

    Edges are labeled from the inverse-metric support; a directed edge only
    accepts (plain tail, bar head).  Vertex factors are multiplied in as
    soon as all three slots are known, pruning zero branches early.
    """
    owner = _layout(djson)
    vertices = djson["vertices"]
    directions = djson.get("directions")
    edges = [tuple(e) for e in (directions if directions is not None else djson["edges"])]
    need = [3] * len(vertices)

    def vertex_factor(v, idx):
        a, b, c = (idx[h] for h in vertices[v])
        return alg.f.get((a, b, c), Z)

    def rec(i, idx, factor):
        if i == len(edges):
            yield idx, factor
            return
        p, q = edges[i]
        for a, b, val in alg.edge_support:
            if directions is not None and not (a < alg.base_dim <= b):
                continue
            idx[p], idx[q] = a, b
            f2 = factor * val
            done = []
            dead = False
            for h in (p, q):
                ow = owner[h]
                if ow[0] == "vertex":
                    need[ow[1]] -= 1
                    done.append(ow[1])
                    if need[ow[1]] == 0:
                        f2 *= vertex_factor(ow[1], idx)
                        if f2 == 0:
                            dead = True
            if not dead:
                yield from rec(i + 1, idx, f2)
            for v in done:
                need[v] += 1
            del idx[p], idx[q]

    yield from rec(0, {}, ONE)


def oracle_weight_circle(djson, alg):
    """Trace the leg word around the circle; exact Fraction."""
    legs = djson["legs"]
    total = Z
    for idx, factor in _assignments(djson, alg):
        prod = identity(len(alg.rep_mats[0]))
        for h in legs:
            prod = mat_mul(prod, alg.rep_mats[idx[h]])
        total += factor * trace(prod)
    return total


def oracle_interval_words(djson, alg):
    """Free leg word -> coefficient, interval skeleton."""
    legs = djson["legs"]
    out = {}
    for idx, factor in _assignments(djson, alg):
        w = tuple(idx[h] for h in legs)
        s = out.get(w, Z) + factor
        if s:
            out[w] = s
        elif w in out:
            del out[w]
    return out


# -- naive observable pipeline --------------------------------------------------


def oracle_sigma(words, m, dbl):
    """Full m^k coproduct expansion, dense matrices, no pruning.

    words: {word tuple: coeff} over the oracle double's indices;
    the slot products interleave with the corner matrix C (identity in the
    lower-left block), and the upper-left block is traced.
    """
    size = len(dbl.rep_mats[0])
    half = size // 2
    C = zeros(size, size)
    for i in range(half):
        C[i + half][i] = ONE
    total = Z
    for word, coeff in words.items():
        k = len(word)
        for assign in product(range(m), repeat=k):
            taus = [identity(size) for _ in range(m)]
            for pos, letter in enumerate(word):
                taus[assign[pos]] = mat_mul(taus[assign[pos]], dbl.rep_mats[letter])
            prod = identity(size)
            for t in taus:
                prod = mat_mul(prod, t)
                prod = mat_mul(prod, C)
            total += coeff * sum(prod[i][i] for i in range(half))
    return total


# -- brute-force isomorphism classification ---------------------------------------


def _normalized_edges(djson):
    """Edges rewritten onto the standard layout (legs 0..L-1, then slots)."""
    owner = _layout(djson)
    L = len(djson["legs"])

    def std(h):
        ow = owner[h]
        return ow[1] if ow[0] == "leg" else L + 3 * ow[1] + ow[2]

    edges = [tuple(sorted((std(a), std(b)))) for a, b in djson["edges"]]
    return L, len(djson["vertices"]), edges


def oracle_certificate(djson):
    """(certificate, sign set) by sheer relabeling enumeration.

    Relabelings: leg rotations (circle only), every vertex bijection, and
    per vertex the six slot maps s -> (k + e*s) % 3; e = -1 reverses that
    vertex's cyclic order and costs a sign.  The certificate is the
    lexicographically smallest relabeled edge list.  Isomorphic diagrams
    share certificates; a class equal to its own negative reaches the
    minimum with both signs.
    """
    from itertools import permutations, product as iproduct

    L, V, edges = _normalized_edges(djson)
    circle = djson["skeleton"] == "circle"
    rotations = range(L) if (circle and L) else (0,)
    slot_maps = [(k, e) for k in range(3) for e in (1, -1)]
    best = None
    best_signs = set()
    for rot in rotations:
        for pi in permutations(range(V)):
            for choice in iproduct(slot_maps, repeat=V):
                sign = 1
                for _, e in choice:
                    if e < 0:
                        sign = -sign

                def mapped(h):
                    if h < L:
                        return (h + rot) % L if circle else h
                    v, s = divmod(h - L, 3)
                    k, e = choice[v]
                    return L + 3 * pi[v] + (k + e * s) % 3

                relab = tuple(
                    sorted(tuple(sorted((mapped(a), mapped(b)))) for a, b in edges)
                )
                if best is None or relab < best:
                    best = relab
                    best_signs = {sign}
                elif relab == best:
                    best_signs.add(sign)
    return (djson["skeleton"], L, V) + (best or ()), frozenset(best_signs)


def oracle_pbw(words, dbl):
    """Straight-line PBW normalizer: bubble descending pairs, add brackets."""
    out = {}
    stack = list(words.items())
    while stack:
        w, c = stack.pop()
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                a, b = w[i], w[i + 1]
                stack.append((w[:i] + (b, a) + w[i + 2 :], c))
                for k, v in dbl.dbr(a, b).items():
                    stack.append((w[:i] + (k,) + w[i + 2 :], c * v))
                break
        else:
            s = out.get(w, Z) + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    return out
