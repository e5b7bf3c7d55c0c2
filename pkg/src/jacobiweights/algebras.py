"""Metrized Lie algebras, the doubling construction, and representations.

All coefficients are exact Fractions.  An algebra is given by a basis, sparse
structure constants and a dense invariant metric; everything downstream
(vertex tensors, edge propagators, representation tensors) is derived from
these tables, so validation here is what keeps the whole pipeline honest.

Doubling: from a base algebra g build g (+) g_bar with
    [x, y]      = base bracket,
    [x, y_bar]  = bar of the base bracket,
    [x_bar, y_bar] = 0,
and metric pairing plain against barred copies only.  Indices 0..d-1 are the
plain copy, d..2d-1 the barred copy.
"""

from __future__ import annotations

import json
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _frozen_terms(d):
    return tuple(sorted((k, v) for k, v in d.items() if v != 0))


class LieAlgebraData:
    """Basis-indexed bracket table plus an invariant nondegenerate metric."""

    def __init__(self, name, basis_names, brackets, metric, defining_matrices=None):
        self.name = name
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        # brackets: {(i, j): {k: coeff}} with i < j sufficient; completed here.
        table = {}
        for (i, j), terms in brackets.items():
            t = {k: Fraction(c) for k, c in terms.items() if c != 0}
            if t:
                table[(i, j)] = t
                table[(j, i)] = {k: -c for k, c in t.items()}
        self._brackets = table
        self.metric = tuple(tuple(Fraction(x) for x in row) for row in metric)
        self.defining_matrices = defining_matrices
        self._inverse_metric = None
        self._vertex_tensor = None

    def bracket(self, i, j):
        """[x_i, x_j] as a sparse {k: coeff} dict."""
        return self._brackets.get((i, j), {})

    def bracket_of(self, elt_a, elt_b):
        """Bracket of two sparse coefficient vectors."""
        out = {}
        for i, ca in elt_a.items():
            if ca == 0:
                continue
            for j, cb in elt_b.items():
                for k, c in self.bracket(i, j).items():
                    s = out.get(k, ZERO) + ca * cb * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return out

    @property
    def inverse_metric(self):
        if self._inverse_metric is None:
            self._inverse_metric = _invert(self.metric, self.name)
        return self._inverse_metric

    def vertex_tensor(self):
        """Lowered structure constants f_abc = <[x_a, x_b], x_c>, sparse."""
        if self._vertex_tensor is None:
            f = {}
            for (a, b), terms in self._brackets.items():
                for k, c in terms.items():
                    row = self.metric[k]
                    for cc in range(self.dim):
                        if row[cc]:
                            s = f.get((a, b, cc), ZERO) + c * row[cc]
                            if s:
                                f[(a, b, cc)] = s
                            elif (a, b, cc) in f:
                                del f[(a, b, cc)]
            self._vertex_tensor = f
        return self._vertex_tensor

    def edge_tensor(self):
        """Inverse metric as a sparse 2-axis tensor."""
        inv = self.inverse_metric
        return {
            (a, b): inv[a][b]
            for a in range(self.dim)
            for b in range(self.dim)
            if inv[a][b]
        }

    def structure_dump(self):
        """JSON-ready dump of basis, brackets and metric for external audit."""
        return {
            "name": self.name,
            "basis": list(self.basis_names),
            "brackets": [
                {"i": i, "j": j, "terms": [[k, str(c)] for k, c in sorted(t.items())]}
                for (i, j), t in sorted(self._brackets.items())
                if i < j
            ],
            "metric": [[str(x) for x in row] for row in self.metric],
        }

    def __repr__(self):
        return "<LieAlgebraData %s dim=%d>" % (self.name, self.dim)


class DoubleAlgebra(LieAlgebraData):
    """The double g (+) g_bar of a base algebra g."""

    def __init__(self, base):
        d = base.dim
        names = list(base.basis_names) + [s + "_bar" for s in base.basis_names]
        brackets = {}
        for i in range(d):
            for j in range(i + 1, d):
                t = base.bracket(i, j)
                if t:
                    brackets[(i, j)] = dict(t)
            for j in range(d):
                t = base.bracket(i, j)
                if t:
                    # [x_i, bar x_j] = bar of [x_i, x_j]
                    brackets[(i, j + d)] = {k + d: c for k, c in t.items()}
        metric = [[ZERO] * (2 * d) for _ in range(2 * d)]
        for a in range(d):
            for b in range(d):
                v = base.metric[a][b]
                metric[a][b + d] = v
                metric[a + d][b] = v
        super().__init__("double(%s)" % base.name, names, brackets, metric)
        self.base = base
        self.base_dim = d
        _check_double_structure(self)

    def is_bar(self, idx):
        return idx >= self.base_dim

    def bar(self, idx):
        """Index of the barred copy of base index idx."""
        return idx + self.base_dim


def _check_double_structure(dbl):
    # metric blocks: plain/plain and bar/bar vanish, cross blocks equal base t
    d = dbl.base_dim
    for a in range(d):
        for b in range(d):
            if dbl.metric[a][b] != 0 or dbl.metric[a + d][b + d] != 0:
                raise ValueError("double metric: diagonal block must vanish")
            if dbl.metric[a][b + d] != dbl.base.metric[a][b]:
                raise ValueError("double metric: cross block must equal base metric")
    # bracket grading: bar ideal is abelian, [plain, bar] lands in bar
    for (i, j), t in dbl._brackets.items():
        bars = (i >= d) + (j >= d)
        if bars == 2:
            raise ValueError("double bracket: bar copy must be abelian")
        want_bar = bars == 1
        for k in t:
            if (k >= d) != want_bar:
                raise ValueError("double bracket: grading violated at [%d,%d]" % (i, j))


def _invert(metric, name):
    """Exact inverse by Gauss-Jordan; raises on a degenerate metric."""
    n = len(metric)
    aug = [list(metric[r]) + [ONE if c == r else ZERO for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise ValueError("metric of %s is degenerate" % name)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def validate_algebra(alg):
    """Exhaustive antisymmetry, Jacobi and metric-invariance checks.

    O(dim^3); meant for tests and CLI audits, exact throughout.
    Returns the number of Jacobi triples checked.
    """
    d = alg.dim
    for i in range(d):
        if alg.bracket(i, i):
            raise ValueError("bracket [x,x] nonzero at %d" % i)
        for j in range(d):
            bij = alg.bracket(i, j)
            bji = alg.bracket(j, i)
            if set(bij) != set(bji) or any(bij[k] != -bji[k] for k in bij):
                raise ValueError("antisymmetry fails at (%d,%d)" % (i, j))
    checked = 0
    for i in range(d):
        ei = {i: ONE}
        for j in range(i + 1, d):
            ej = {j: ONE}
            for k in range(j + 1, d):
                ek = {k: ONE}
                acc = {}
                for u, inner in (
                    (ei, alg.bracket(j, k)),
                    (ej, alg.bracket(k, i)),
                    (ek, alg.bracket(i, j)),
                ):
                    for m, c in alg.bracket_of(u, inner).items():
                        s = acc.get(m, ZERO) + c
                        if s:
                            acc[m] = s
                        elif m in acc:
                            del acc[m]
                if acc:
                    raise ValueError("Jacobi fails at (%d,%d,%d)" % (i, j, k))
                checked += 1
    # invariance: the lowered vertex tensor must be totally antisymmetric
    f = alg.vertex_tensor()
    for (a, b, c), v in f.items():
        if f.get((b, a, c), ZERO) != -v or f.get((b, c, a), ZERO) != v:
            raise ValueError("metric invariance fails at (%d,%d,%d)" % (a, b, c))
    # and the metric must be symmetric
    for a in range(d):
        for b in range(a, d):
            if alg.metric[a][b] != alg.metric[b][a]:
                raise ValueError("metric not symmetric at (%d,%d)" % (a, b))
    return checked


def build_gl(n):
    """gl(n) with basis E_ij in lexicographic order and the defining trace form.

    [E_ij, E_kl] = d_jk E_il - d_li E_kj;  t(E_ij, E_kl) = d_jk d_il.
    The Killing form is degenerate on gl(n), so the defining trace form is the
    invariant metric used throughout.
    """
    if n < 1:
        raise ValueError("gl(n) needs n >= 1")
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    names = ["E%d%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    brackets = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if a >= b:
                continue
            terms = {}
            if j == k:
                terms[idx[(i, l)]] = terms.get(idx[(i, l)], ZERO) + 1
            if l == i:
                terms[idx[(k, j)]] = terms.get(idx[(k, j)], ZERO) - 1
            terms = {m: c for m, c in terms.items() if c != 0}
            if terms:
                brackets[(a, b)] = terms
    metric = [[ZERO] * (n * n) for _ in range(n * n)]
    for (i, j), a in idx.items():
        metric[a][idx[(j, i)]] = ONE
    mats = tuple({(i, j): ONE} for (i, j) in sorted(idx, key=idx.get))
    return LieAlgebraData("gl(%d)" % n, names, brackets, metric, defining_matrices=(n, mats))


def build_sl2():
    """sl(2) with basis (H, E, F) and the defining trace form."""
    brackets = {
        (0, 1): {1: Fraction(2)},   # [H, E] = 2E
        (0, 2): {2: Fraction(-2)},  # [H, F] = -2F
        (1, 2): {0: ONE},           # [E, F] = H
    }
    metric = [
        [Fraction(2), ZERO, ZERO],
        [ZERO, ZERO, ONE],
        [ZERO, ONE, ZERO],
    ]
    mats = (
        {(0, 0): ONE, (1, 1): -ONE},  # H
        {(0, 1): ONE},                # E
        {(1, 0): ONE},                # F
    )
    return LieAlgebraData("sl2", ("H", "E", "F"), brackets, metric, defining_matrices=(2, mats))


def double(base):
    """Double of a base algebra, validated at build time.

    Raises if the base metric is degenerate or if the assembled bracket
    fails antisymmetry, Jacobi, invariance of the pairing, or the grading
    (bar elements bracket to zero among themselves).
    """
    base.inverse_metric  # force the nondegeneracy check first
    dbl = DoubleAlgebra(base)
    validate_algebra(dbl)
    return dbl


class Representation:
    """Matrices for every basis element, exact and sparse ({(r,c): coeff})."""

    def __init__(self, algebra, dim, matrices, name="rep"):
        if len(matrices) != algebra.dim:
            raise ValueError("need one matrix per basis element")
        self.algebra = algebra
        self.dim = dim
        self.name = name
        self.matrices = tuple(
            {rc: Fraction(v) for rc, v in m.items() if v != 0} for m in matrices
        )

    def matrix(self, i):
        return self.matrices[i]

    def tensor(self):
        """All matrices as one sparse 3-axis tensor (basis, row, col)."""
        out = {}
        for a, m in enumerate(self.matrices):
            for (r, c), v in m.items():
                out[(a, r, c)] = v
        return out

    def apply_word(self, word):
        """Product of matrices for a word of basis indices (empty -> identity)."""
        prod = {(r, r): ONE for r in range(self.dim)}
        for letter in word:
            prod = _mat_mul(prod, self.matrices[letter])
            if not prod:
                break
        return prod

    def __repr__(self):
        return "<Representation %s of %s, dim=%d>" % (self.name, self.algebra.name, self.dim)


def _mat_mul(a, b):
    by_row = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out = {}
    for (r, c), v in a.items():
        hits = by_row.get(c)
        if not hits:
            continue
        for c2, v2 in hits:
            s = out.get((r, c2), ZERO) + v * v2
            if s:
                out[(r, c2)] = s
            elif (r, c2) in out:
                del out[(r, c2)]
    return out


def validate_representation(rep):
    """Check rho([x,y]) = [rho(x), rho(y)] for every basis pair, exactly."""
    alg = rep.algebra
    for i in range(alg.dim):
        mi = rep.matrix(i)
        for j in range(i + 1, alg.dim):
            mj = rep.matrix(j)
            comm = _mat_sub(_mat_mul(mi, mj), _mat_mul(mj, mi))
            want = {}
            for k, c in alg.bracket(i, j).items():
                for rc, v in rep.matrix(k).items():
                    s = want.get(rc, ZERO) + c * v
                    if s:
                        want[rc] = s
                    elif rc in want:
                        del want[rc]
            if comm != want:
                raise ValueError("representation fails bracket at (%d,%d)" % (i, j))
    return True


def _mat_sub(a, b):
    out = dict(a)
    for rc, v in b.items():
        s = out.get(rc, ZERO) - v
        if s:
            out[rc] = s
        elif rc in out:
            del out[rc]
    return out


def defining_rep(alg):
    """The defining representation recorded by build_gl / build_sl2."""
    if alg.defining_matrices is None:
        raise ValueError("%s carries no defining representation" % alg.name)
    n, mats = alg.defining_matrices
    return Representation(alg, n, mats, name="defining")


def rep_R(base_rep, dbl=None):
    """Block upper-triangular action of the double on V (+) V.

    Plain elements act diagonally as (B, B); barred elements act strictly
    upper-triangularly, sending the second copy into the first.  Products of
    two barred images vanish.  The bracket compatibility of the result is
    validated exhaustively.

    Pass `dbl` to reuse an already-built double of base_rep's algebra.
    """
    base = base_rep.algebra
    validate_representation(base_rep)
    if dbl is None:
        dbl = double(base)
    elif not (isinstance(dbl, DoubleAlgebra) and dbl.base is base):
        raise ValueError("dbl must be the double of the representation's algebra")
    n = base_rep.dim
    mats = []
    for i in range(base.dim):
        m = {}
        for (r, c), v in base_rep.matrix(i).items():
            m[(r, c)] = v
            m[(r + n, c + n)] = v
        mats.append(m)
    for i in range(base.dim):
        mats.append({(r, c + n): v for (r, c), v in base_rep.matrix(i).items()})
    out = Representation(dbl, 2 * n, mats, name="R(%s)" % base_rep.name)
    validate_representation(out)
    return out


def algebra_by_name(name):
    """Build (algebra, defining rep) from a short name: 'gl2', 'gl3', ..., 'sl2'."""
    name = name.strip().lower()
    if name == "sl2":
        alg = build_sl2()
    elif name.startswith("gl") and name[2:].isdigit():
        alg = build_gl(int(name[2:]))
    else:
        raise ValueError("unknown algebra name %r (use glN or sl2)" % name)
    return alg, defining_rep(alg)


def algebra_from_spec(spec):
    """Build (algebra, defining rep) from {"family": "gl"|"sl2", "n": ..., "rep": "defining"}.

    Accepts a dict, a JSON string, or a path to a JSON file.
    """
    if isinstance(spec, str):
        try:
            with open(spec) as fh:
                spec = json.load(fh)
        except OSError:
            spec = json.loads(spec)
    family = spec.get("family")
    rep_name = spec.get("rep", "defining")
    if rep_name != "defining":
        raise ValueError("unknown rep %r (only 'defining' is built in)" % rep_name)
    if family == "gl":
        n = int(spec.get("n", 0))
        alg = build_gl(n)
    elif family == "sl2":
        alg = build_sl2()
    else:
        raise ValueError("unknown algebra family %r" % family)
    return alg, defining_rep(alg)
