"""The holonomy observable pipeline on enveloping words.

An arity-1 word tensor over a doubled algebra passes through four stages:
comultiplication into m slots (`delta_m`), the representation applied per
slot, the alternating product with the corner matrix C (`lambda_C`), and
the trace over the upper-left block (`half_trace`).  `sigma_m` is the
composite.  `chi` symmetrizes a diagram over all leg orderings, and
`sigma_wheel_fast` evaluates the composite on wheel inputs by the
surviving-term shortcut, entirely inside the base algebra.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebras import DoubleAlgebra
from .diagrams import DiagramSum, make_wheel, permute_legs
from .weights import EnvelopingTensor, weight_circle

ZERO = Fraction(0)
ONE = Fraction(1)


# -- 2n x 2n block matrices ---------------------------------------------------


def _mul(a, b, rows_b=None):
    if rows_b is None:
        rows_b = {}
        for (r, c), v in b.items():
            rows_b.setdefault(r, []).append((c, v))
    out = {}
    for (r, k), va in a.items():
        for c, vb in rows_b.get(k, ()):
            rc = (r, c)
            s = out.get(rc, ZERO) + va * vb
            if s:
                out[rc] = s
            elif rc in out:
                del out[rc]
    return out


class BlockMatrix2n:
    """Sparse 2n x 2n rational matrix with an n x n block view."""

    def __init__(self, half, entries):
        if half < 1:
            raise ValueError("block size must be >= 1")
        self.half = half
        self.dim = 2 * half
        self.entries = {}
        for (r, c), v in entries.items():
            if not (0 <= r < self.dim and 0 <= c < self.dim):
                raise ValueError("entry (%d, %d) outside a %dx%d matrix" % (r, c, self.dim, self.dim))
            v = Fraction(v)
            if v:
                self.entries[(r, c)] = v

    @classmethod
    def identity(cls, half):
        return cls(half, {(r, r): ONE for r in range(2 * half)})

    @classmethod
    def corner(cls, half):
        """C: identity in the lower-left block, zero elsewhere.  C*C = 0."""
        return cls(half, {(half + r, r): ONE for r in range(half)})

    def block(self, i, j):
        """The (i, j) block as a sparse dict with indices inside the block."""
        if i not in (0, 1) or j not in (0, 1):
            raise ValueError("block indices are 0 or 1")
        n = self.half
        return {
            (r - i * n, c - j * n): v
            for (r, c), v in self.entries.items()
            if i * n <= r < (i + 1) * n and j * n <= c < (j + 1) * n
        }

    def __mul__(self, other):
        if not isinstance(other, BlockMatrix2n):
            return NotImplemented
        if other.half != self.half:
            raise ValueError("block sizes differ: %d vs %d" % (self.half, other.half))
        return BlockMatrix2n(self.half, _mul(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix2n):
            return NotImplemented
        return self.half == other.half and self.entries == other.entries

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        return "<BlockMatrix2n dim=%d nnz=%d>" % (self.dim, len(self.entries))


def half_trace(matrix):
    """Trace of the upper-left block."""
    n = matrix.half
    return sum((matrix.entries.get((r, r), ZERO) for r in range(n)), ZERO)


def lambda_C(taus):
    """Alternating product tau_1 C tau_2 C ... tau_m C."""
    taus = list(taus)
    if not taus:
        raise ValueError("need at least one factor")
    half = taus[0].half
    c = BlockMatrix2n.corner(half)
    acc = taus[0] * c
    for tau in taus[1:]:
        if tau.half != half:
            raise ValueError("block sizes differ: %d vs %d" % (half, tau.half))
        acc = acc * tau * c
    return acc


# -- comultiplication ----------------------------------------------------------


def delta_m(w, m):
    """Distribute each word's letters over m slots in all m^k ways.

    Generators go to X(x)1 + 1(x)X, extended multiplicatively, so every
    slot keeps its letters in the original relative order.  Coefficients of
    coinciding slot tuples merge.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if w.arity != 1:
        raise ValueError("delta_m expands arity-1 tensors")
    terms = {}
    for (word,), coeff in w.terms.items():
        for assignment in itertools.product(range(m), repeat=len(word)):
            slots = [[] for _ in range(m)]
            for letter, s in zip(word, assignment):
                slots[s].append(letter)
            key = tuple(tuple(s) for s in slots)
            terms[key] = terms.get(key, ZERO) + coeff
    return EnvelopingTensor(m, terms, w.algebra)


# -- the composite observable --------------------------------------------------


def _rep_block_matrix(rho, cache, word):
    mat = cache.get(word)
    if mat is None:
        mat = BlockMatrix2n(rho.dim // 2, rho.apply_word(word))
        cache[word] = mat
    return mat


def sigma_m(w, rho, m):
    """Tr over the upper-left block of lambda_C of the rep applied slotwise
    to delta_m(w).

    w must be arity 1 over a doubled algebra and rho a representation of
    that double with even dimension (block size = rho.dim / 2).  Slot
    assignments are generated lazily; a slot that accumulates two barred
    letters is dropped on the spot, since the rep sends barred elements to
    strictly upper-triangular blocks whose products through block-diagonal
    factors vanish.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if w.arity != 1:
        raise ValueError("sigma_m consumes arity-1 tensors")
    dbl = w.algebra
    if not isinstance(dbl, DoubleAlgebra):
        raise ValueError("sigma_m needs words over a doubled algebra")
    if rho.algebra.dim != dbl.dim:
        raise ValueError("representation does not match the word algebra")
    if rho.dim % 2:
        raise ValueError("representation dimension must be even")
    cache = {(): BlockMatrix2n.identity(rho.dim // 2)}
    total = ZERO

    def walk(word, pos, slots, bars):
        nonlocal total
        if pos == len(word):
            taus = [_rep_block_matrix(rho, cache, tuple(s)) for s in slots]
            total += coeff * half_trace(lambda_C(taus))
            return
        letter = word[pos]
        barred = dbl.is_bar(letter)
        for s in range(m):
            if barred and bars[s]:
                continue
            slots[s].append(letter)
            bars[s] += barred
            walk(word, pos + 1, slots, bars)
            slots[s].pop()
            bars[s] -= barred

    for (word,), coeff in w.terms.items():
        walk(word, 0, [[] for _ in range(m)], [0] * m)
    return total


def chi(diagram):
    """Sum the diagram over all orderings of its skeleton attachments.

    Permutations landing on the same class accumulate multiplicity, and
    orderings whose class is zero contribute nothing.
    """
    out = DiagramSum()
    for sigma in itertools.permutations(range(diagram.legs)):
        out.add(permute_legs(diagram, sigma), 1)
    return out


def sigma_wheel_fast(m, g, rep):
    """The wheel observable by the surviving-term shortcut, in the base algebra.

    For wheel inputs every word letter is barred, so a slot either takes
    exactly one letter or the term dies (two barred letters annihilate, and
    an empty slot forces a doubled-up one elsewhere).  The m! survivors
    reassemble into the base-algebra circle weights of the leg-permuted
    wheel, which is what this computes.  Agrees with sigma_m applied to the
    contracted directed wheel over double(g) with rep_R.
    """
    if m < 2:
        raise ValueError("wheel needs m >= 2")
    wheel = make_wheel(m)
    total = ZERO
    for sigma in itertools.permutations(range(m)):
        total += weight_circle(permute_legs(wheel, sigma), g, rep)
    return total


# -- exact interpolation --------------------------------------------------------


def interpolate_polynomial(points):
    """Exact Lagrange interpolation; coefficients in ascending degree order.

    points: pairs (x, y) with distinct x.  Returns the unique polynomial of
    degree < len(points) through them, trailing zero coefficients stripped.
    """
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    coeffs = [ZERO] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [ONE]
        denom = ONE
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # multiply basis by (x - xj)
            nxt = [ZERO] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] -= c * xj
                nxt[k + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
