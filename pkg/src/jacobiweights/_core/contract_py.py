"""Pure-Python sparse tensor contraction kernel.

Tensors are dicts mapping index tuples to nonzero Fractions.  The kernel
knows nothing about diagrams or algebras; it only moves coefficients.
The compiled twin in _contract_cy.pyx implements the same three functions
with identical results (exact rational arithmetic in both).
"""

from fractions import Fraction

NAME = "pure"


def contract(a, a_rank, b, b_rank, pairs):
    """Contract two sparse tensors over the given axis pairs.

    pairs is a sequence of (axis_of_a, axis_of_b).  Output axes are the free
    axes of a in ascending order followed by the free axes of b in ascending
    order.  pairs may be empty (outer product).
    """
    a_axes = tuple(p[0] for p in pairs)
    b_axes = tuple(p[1] for p in pairs)
    a_free = tuple(i for i in range(a_rank) if i not in a_axes)
    b_free = tuple(i for i in range(b_rank) if i not in b_axes)

    buckets = {}
    for kb, vb in b.items():
        sig = tuple(kb[i] for i in b_axes)
        buckets.setdefault(sig, []).append((tuple(kb[i] for i in b_free), vb))

    out = {}
    for ka, va in a.items():
        hits = buckets.get(tuple(ka[i] for i in a_axes))
        if not hits:
            continue
        ka_free = tuple(ka[i] for i in a_free)
        for kb_free, vb in hits:
            key = ka_free + kb_free
            s = out.get(key)
            if s is None:
                out[key] = va * vb
            else:
                s = s + va * vb
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


def self_trace(t, rank, pairs):
    """Contract pairs of axes of a single tensor against each other.

    Both axes of every pair must carry equal indices for a term to survive.
    Output axes are the unpaired axes in ascending order.
    """
    paired = set()
    for i, j in pairs:
        paired.add(i)
        paired.add(j)
    free = tuple(i for i in range(rank) if i not in paired)

    out = {}
    for k, v in t.items():
        ok = True
        for i, j in pairs:
            if k[i] != k[j]:
                ok = False
                break
        if not ok:
            continue
        key = tuple(k[i] for i in free)
        s = out.get(key)
        if s is None:
            out[key] = v
        else:
            s = s + v
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def permute_axes(t, perm):
    """Reorder axes: new_key[i] = old_key[perm[i]]."""
    perm = tuple(perm)
    return {tuple(k[p] for p in perm): v for k, v in t.items()}


def _as_fraction_dict(t):
    # normalization hook shared with the compiled twin's output contract
    return {k: v if isinstance(v, Fraction) else Fraction(v) for k, v in t.items()}
