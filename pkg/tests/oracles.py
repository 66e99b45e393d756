"""Independent oracles used by the tests.

Nothing here calls into the construction code: the S3 table is built by
composing permutations, and the bipartite product formulas are written out
term by term.
"""
from fractions import Fraction
from itertools import permutations

from rba6.surd import Surd


def s3_table():
    """Group elements of S3 as tuples, identity first, and their products."""
    elems = sorted(permutations(range(3)))
    ident = (0, 1, 2)
    elems.remove(ident)
    elems = [ident] + elems

    def compose(g, h):
        # apply h first, then g
        return tuple(g[h[i]] for i in range(3))

    index = {g: i for i, g in enumerate(elems)}
    mult = [[index[compose(g, h)] for h in elems] for g in elems]
    inv = [index[tuple(sorted(range(3), key=lambda i: g[i]))] for g in elems]
    return elems, mult, inv


def group_tensor(mult):
    r = len(mult)
    return [[[Fraction(1 if mult[i][j] == k else 0) for k in range(r)] for j in range(r)] for i in range(r)]


def _products(terms):
    out = {}
    for (i, j), row in terms.items():
        out[(i, j)] = {k: v for k, v in row.items()}
    return out


def real_bipartite_products(d1, d2, d3, d4, sigma):
    """Displayed products for kernel {b0, b2, b3}; b5 stands for b4*."""
    d1, d2, d3, d4 = map(Fraction, (d1, d2, d3, d4))
    n = 2 * (1 + d2 + d3)
    S = d2 + d3
    R = Surd.sqrt(d1 * d2 * d3) * sigma
    return _products({
        (1, 1): {0: Surd(d1), 2: Surd((d1 * d1 - d1) / S), 3: Surd((d1 * d1 - d1) / S)},
        (1, 2): {1: Surd(d2 * (d1 - 1) / S), 4: (d1 * d2 + R) / S, 5: (d1 * d2 - R) / S},
        (1, 3): {1: Surd(d3 * (d1 - 1) / S), 4: (d1 * d3 - R) / S, 5: (d1 * d3 + R) / S},
        (2, 2): {0: Surd(d2), 2: Surd(d2 * (d2 * d2 - d2 + d2 * d3 - 3 * d3) / S ** 2),
                 3: Surd(d2 * (d2 * n - 2 * d3) / (2 * S ** 2))},
        (3, 3): {0: Surd(d3), 2: Surd(d3 * (d3 * n - 2 * d2) / (2 * S ** 2)),
                 3: Surd(d3 * (d3 * d3 - d3 + d2 * d3 - 3 * d2) / S ** 2)},
        (2, 3): {2: Surd(d3 * (d2 * n - 2 * d3) / (2 * S ** 2)), 3: Surd(d2 * (d3 * n - 2 * d2) / (2 * S ** 2))},
        (3, 2): {2: Surd(d3 * (d2 * n - 2 * d3) / (2 * S ** 2)), 3: Surd(d2 * (d3 * n - 2 * d2) / (2 * S ** 2))},
        (1, 4): {2: (d1 * d2 + R) * d4 / (d2 * S), 3: (d1 * d3 - R) * d4 / (d3 * S)},
        (1, 5): {2: (d1 * d2 - R) * d4 / (d2 * S), 3: (d1 * d3 + R) * d4 / (d3 * S)},
        (2, 4): {1: (d1 * d2 - R) * d4 / (d1 * S), 4: (d2 * d4 - d2 + R) / S, 5: Surd(d2 * d4 / S)},
        (2, 5): {1: (d1 * d2 + R) * d4 / (d1 * S), 4: Surd(d2 * d4 / S), 5: (d2 * d4 - d2 - R) / S},
        (3, 4): {1: (d1 * d3 + R) * d4 / (d1 * S), 4: (d3 * d4 - d3 - R) / S, 5: Surd(d3 * d4 / S)},
        (3, 5): {1: (d1 * d3 - R) * d4 / (d1 * S), 4: Surd(d3 * d4 / S), 5: (d3 * d4 - d3 + R) / S},
        (4, 5): {0: Surd(d4), 2: (d2 * d4 - d2 + R) * d4 / (d2 * S), 3: (d3 * d4 - d3 - R) * d4 / (d3 * S)},
        (5, 4): {0: Surd(d4), 2: (d2 * d4 - d2 - R) * d4 / (d2 * S), 3: (d3 * d4 - d3 + R) * d4 / (d3 * S)},
        (4, 4): {2: Surd(d4 * d4 / S), 3: Surd(d4 * d4 / S)},
        (5, 5): {2: Surd(d4 * d4 / S), 3: Surd(d4 * d4 / S)},
    })


def non_real_bipartite_products(d1, d2, d3, d4, sigma):
    """Displayed products for kernel {b0, b4, b5}, with s4 > 0 in B4."""
    d1, d2, d3, d4 = map(Fraction, (d1, d2, d3, d4))
    R = Surd.sqrt(d1 * d2 * d3) * sigma
    half = Fraction(1, 2)
    terms = {}
    for i, d in ((1, d1), (2, d2), (3, d3)):
        c = Surd((d * d - d) / (2 * d4))
        terms[(i, i)] = {0: Surd(d), 4: c, 5: c}
    terms.update({
        (1, 2): {4: (d1 * d2 + R) / (2 * d4), 5: (d1 * d2 - R) / (2 * d4)},
        (1, 3): {4: (d1 * d3 - R) / (2 * d4), 5: (d1 * d3 + R) / (2 * d4)},
        (2, 3): {4: (d2 * d3 + R) / (2 * d4), 5: (d2 * d3 - R) / (2 * d4)},
        (4, 5): {0: Surd(d4), 4: Surd((d4 - 1) * half), 5: Surd((d4 - 1) * half)},
        (4, 4): {4: Surd((d4 - 1) * half), 5: Surd((d4 + 1) * half)},
        (1, 4): {1: Surd((d1 - 1) * half), 2: (d1 * d2 + R) / (2 * d2), 3: (d1 * d3 - R) / (2 * d3)},
        (1, 5): {1: Surd((d1 - 1) * half), 2: (d1 * d2 - R) / (2 * d2), 3: (d1 * d3 + R) / (2 * d3)},
        (2, 4): {1: (d1 * d2 - R) / (2 * d1), 2: Surd((d2 - 1) * half), 3: (d2 * d3 + R) / (2 * d3)},
        (2, 5): {1: (d1 * d2 + R) / (2 * d1), 2: Surd((d2 - 1) * half), 3: (d2 * d3 - R) / (2 * d3)},
        (3, 4): {1: (d1 * d3 + R) / (2 * d1), 2: (d2 * d3 - R) / (2 * d2), 3: Surd((d3 - 1) * half)},
        (3, 5): {1: (d1 * d3 - R) / (2 * d1), 2: (d2 * d3 + R) / (2 * d2), 3: Surd((d3 - 1) * half)},
    })
    return _products(terms)


def matches(tensor, products, swap45=False):
    """True when every displayed product agrees with the tensor exactly."""
    sw = (0, 1, 2, 3, 5, 4) if swap45 else tuple(range(6))
    for (i, j), row in products.items():
        for k in range(6):
            want = row.get(k, Surd(0))
            if tensor.lam[sw[i]][sw[j]][sw[k]] != want:
                return False
    return True
