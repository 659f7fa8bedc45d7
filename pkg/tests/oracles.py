"""Independent routes used as test oracles."""

from collections import Counter
from functools import lru_cache

import numpy as np

from lsngrade.reps import decompose_character, dim_of, freudenthal


def character_product(t, lam, mu):
    """Full character of V(lam) ⊗ V(mu), weight by weight."""
    a, b = freudenthal(t, lam), freudenthal(t, mu)
    prod = Counter()
    for w1, m1 in a.items():
        for w2, m2 in b.items():
            prod[tuple(x + y for x, y in zip(w1, w2))] += m1 * m2
    return prod


def brute_tensor(t, lam, mu):
    """Multiply full characters and strip off highest weights."""
    prod = character_product(t, lam, mu)
    return dict(decompose_character(t, {w: m for w, m in prod.items() if min(w) >= 0}))


@lru_cache(maxsize=None)
def _dense(t, lam):
    wts = freudenthal(t, lam)
    pts = np.array(list(wts), dtype=np.int64)
    lo = pts.min(axis=0)
    arr = np.zeros(tuple(pts.max(axis=0) - lo + 1), dtype=np.int64)
    for w, m in wts.items():
        arr[tuple(np.array(w) - lo)] = m
    return arr, lo


def _add_at(acc, lo_acc, arr, lo, scale):
    off = lo - lo_acc
    if (off < 0).any() or any(o + n > m for o, n, m in zip(off, arr.shape, acc.shape)):
        return False
    acc[tuple(slice(o, o + n) for o, n in zip(off, arr.shape))] += scale * arr
    return True


def character_matches(t, lam, mu, decomposition):
    """Does sum m * ch V(nu) over the decomposition equal ch V(lam) * ch V(mu)?

    Both sides live in one dense integer box; the product is a sum of shifted copies.
    """
    b, lo_b = _dense(t, tuple(mu))
    a_wts = freudenthal(t, lam)
    lo_a = np.array(list(a_wts), dtype=np.int64).min(axis=0)
    hi_a = np.array(list(a_wts), dtype=np.int64).max(axis=0)
    lo = lo_a + lo_b
    shape = tuple(hi_a - lo_a + np.array(b.shape))
    prod = np.zeros(shape, dtype=np.int64)
    for w, m in a_wts.items():
        _add_at(prod, lo, b, np.array(w) + lo_b, m)
    acc = np.zeros(shape, dtype=np.int64)
    for nu, m in decomposition:
        c, lo_c = _dense(t, tuple(nu))
        if not _add_at(acc, lo, c, lo_c, m):
            return False
    return np.array_equal(acc, prod)


def small_weights(t, max_dim):
    """Every dominant weight with dim V <= max_dim (dimension grows in every coordinate)."""
    out = []
    n = t.rank

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        x = 0
        while True:
            w = tuple(prefix + [x] + [0] * (n - len(prefix) - 1))
            if dim_of(t, w) > max_dim:
                break
            rec(prefix + [x])
            x += 1

    rec([])
    return [w for w in out if dim_of(t, w) <= max_dim]
