"""Structure constants of a standard basis.

The constants are read off the trace form,
    lambda_ijk = <b_i b_j, b_k> / (n delta_k),
with <x, y> = delta(x)delta(y) + m_phi phi(x)phi(y) + m_chi tr(X Y^T).
A second route expands b_i b_j in the e-coordinates and applies Q = nP^-1;
the two are cross-checked in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .realize import Mat2, StandardBasis
from .spectrum import CharacterTable
from .surd import Surd, sign

__all__ = [
    "STAR",
    "AlgebraElement",
    "StructureTensor",
    "trace_form",
    "lambda_tensor",
    "lambda_tensor_via_q",
    "quotient_tensor",
]

# b4* = b5; all other basis elements are symmetric
STAR = (0, 1, 2, 3, 5, 4)


@dataclass(frozen=True)
class AlgebraElement:
    """An element (delta, phi, X) of R + R + M2(R)."""

    delta: Surd
    phi: Surd
    X: Mat2

    def __mul__(self, o: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.delta * o.delta, self.phi * o.phi, self.X * o.X)

    def __add__(self, o: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.delta + o.delta, self.phi + o.phi, self.X + o.X)

    def scale(self, c) -> AlgebraElement:
        return AlgebraElement(self.delta * c, self.phi * c, self.X * c)

    def star(self) -> AlgebraElement:
        return AlgebraElement(self.delta, self.phi, self.X.T)

    def coords(self):
        """Coordinates in e0..e5 (delta, phi, r, u, s, t)."""
        return (self.delta, self.phi, self.X.a, self.X.d, self.X.b, self.X.c)

    @classmethod
    def basis(cls, basis: StandardBasis, i: int) -> AlgebraElement:
        return cls(Surd(basis.deltas[i]), Surd(basis.phis[i]), basis.B[i])


def trace_form(x: AlgebraElement, y: AlgebraElement, table: CharacterTable) -> Surd:
    """<x, y> = tau(x y*)."""
    X, Y = x.X, y.X
    tr = X.a * Y.a + X.b * Y.b + X.c * Y.c + X.d * Y.d
    return x.delta * y.delta + x.phi * y.phi * table.m_phi + tr * table.m_chi


@dataclass
class StructureTensor:
    """lambda[i][j][k]: coefficient of b_k in b_i b_j."""

    lam: list
    degrees: tuple
    star: tuple = STAR
    labels: tuple | None = None
    phis: tuple | None = None
    chi: tuple | None = None
    _flags: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.lam)

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.lam[i][j][k]

    def entries(self):
        r = range(self.rank)
        for i, j, k in product(r, r, r):
            yield i, j, k, self.lam[i][j][k]

    @property
    def is_integral(self) -> bool:
        if "integral" not in self._flags:
            self._flags["integral"] = all(v.as_integer() is not None for *_, v in self.entries())
        return self._flags["integral"]

    @property
    def is_table_algebra(self) -> bool:
        if "ta" not in self._flags:
            self._flags["ta"] = all(sign(v) >= 0 for *_, v in self.entries())
        return self._flags["ta"]

    @property
    def is_standard(self) -> bool:
        """lambda_{i i* 0} = delta_i and lambda_{i j 0} = 0 for j != i*."""
        for i in range(self.rank):
            for j in range(self.rank):
                want = Surd(self.degrees[i]) if j == self.star[i] else Surd(0)
                if self.lam[i][j][0] != want:
                    return False
        return True

    @property
    def satisfies_character_bounds(self) -> bool:
        """|phi_i| <= delta_i and |chi_i| <= 2 delta_i (necessary for a table algebra)."""
        if self.phis is None or self.chi is None:
            return True
        return all(abs(Fraction(p)) <= d for p, d in zip(self.phis, self.degrees)) and all(
            abs(Fraction(c)) <= 2 * d for c, d in zip(self.chi, self.degrees)
        )

    def is_associative(self) -> bool:
        r = range(self.rank)
        lam = self.lam
        for i, j, l, m in product(r, r, r, r):
            left = Surd(0)
            right = Surd(0)
            for k in r:
                if lam[i][j][k] and lam[k][l][m]:
                    left = left + lam[i][j][k] * lam[k][l][m]
                if lam[j][l][k] and lam[i][k][m]:
                    right = right + lam[j][l][k] * lam[i][k][m]
            if left != right:
                return False
        return True

    def relabel(self, perm) -> StructureTensor:
        """Move working index i to position perm[i]."""
        r = self.rank
        out = [[[None] * r for _ in range(r)] for _ in range(r)]
        for i, j, k, v in self.entries():
            out[perm[i]][perm[j]][perm[k]] = v
        inv = [0] * r
        for i, p in enumerate(perm):
            inv[p] = i

        def move(seq):
            return None if seq is None else tuple(seq[inv[a]] for a in range(r))

        star = tuple(perm[self.star[inv[a]]] for a in range(r))
        return StructureTensor(out, move(self.degrees), star, move(self.labels), move(self.phis), move(self.chi))

    def name(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def product_text(self, i: int, j: int) -> str:
        terms = []
        for k in range(self.rank):
            v = self.lam[i][j][k]
            if not v:
                continue
            s = str(v)
            if v == 1:
                terms.append(self.name(k))
            elif len(v.terms) == 1:
                terms.append(f"{s}*{self.name(k)}")
            else:
                terms.append(f"({s})*{self.name(k)}")
        rhs = " + ".join(terms) if terms else "0"
        return f"{self.name(i)}*{self.name(j)} = {rhs.replace('+ -', '- ')}"

    def products_text(self) -> list[str]:
        r = range(self.rank)
        return [self.product_text(i, j) for i in r for j in r if i and j]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degrees": [str(Fraction(d)) for d in self.degrees],
            "star": list(self.star),
            "nonzero": [[i, j, k, str(v)] for i, j, k, v in self.entries() if v],
            "is_integral": self.is_integral,
            "is_table_algebra": self.is_table_algebra,
            "is_standard": self.is_standard,
            "character_bounds": self.satisfies_character_bounds,
        }

    def rational_array(self):
        """Nested lists of Fractions; raises if any constant is irrational."""
        return [[[v.rational() for v in row] for row in plane] for plane in self.lam]


def lambda_tensor(basis: StandardBasis, table: CharacterTable | None = None) -> StructureTensor:
    table = table or basis.table
    n = table.n
    els = [AlgebraElement.basis(basis, i) for i in range(6)]
    D = basis.deltas
    lam = [[[None] * 6 for _ in range(6)] for _ in range(6)]
    for i in range(6):
        for j in range(6):
            prod = els[i] * els[j]
            for k in range(6):
                lam[i][j][k] = trace_form(prod, els[k], table) / (n * D[k])
    return StructureTensor(lam, tuple(D), STAR, None, tuple(basis.phis), tuple(table.chi))


def lambda_tensor_via_q(basis: StandardBasis) -> StructureTensor:
    """Second route: coordinates of b_i b_j through Q = n P^-1."""
    table = basis.table
    P = basis.transition
    if P is None:
        raise ValueError("basis carries no transition matrix")
    D = basis.deltas
    mult = (Fraction(1), table.m_phi) + (table.m_chi,) * 4
    Q = [[P[j, i] * (mult[j] / D[i]) for j in range(6)] for i in range(6)]
    els = [AlgebraElement.basis(basis, i) for i in range(6)]
    lam = [[[None] * 6 for _ in range(6)] for _ in range(6)]
    for i in range(6):
        for j in range(6):
            x = (els[i] * els[j]).coords()
            for k in range(6):
                acc = Surd(0)
                for c in range(6):
                    if x[c] and Q[k][c]:
                        acc = acc + Q[k][c] * x[c]
                lam[i][j][k] = acc / table.n
    return StructureTensor(lam, tuple(D), STAR, None, tuple(basis.phis), tuple(table.chi))


def _is_closed(tensor: StructureTensor, N) -> bool:
    Ns = set(N)
    if 0 not in Ns:
        return False
    for a in Ns:
        if tensor.star[a] not in Ns:
            return False
        for b in Ns:
            for k in range(tensor.rank):
                if tensor.lam[a][b][k] and k not in Ns:
                    return False
    return True


def double_cosets(tensor: StructureTensor, N) -> list[tuple]:
    r = tensor.rank
    seen = set()
    cosets = []
    for b in range(r):
        if b in seen:
            continue
        # support of N b N
        supp = set()
        for x in N:
            left = {k for k in range(r) if tensor.lam[x][b][k]}
            for c in left:
                for y in N:
                    supp |= {k for k in range(r) if tensor.lam[c][y][k]}
        cos = tuple(sorted(supp))
        seen |= supp
        cosets.append(cos)
    return cosets


def quotient_tensor(tensor: StructureTensor, N) -> StructureTensor:
    """Structure constants of the quotient by a closed subset N on the
    double-coset elements (1/o(N)) * sum of the coset."""
    N = tuple(sorted(set(N)))
    if not _is_closed(tensor, N):
        raise ValueError(f"{N} is not a closed subset")
    oN = sum(Fraction(tensor.degrees[i]) for i in N)
    cosets = double_cosets(tensor, N)
    where = {b: a for a, cos in enumerate(cosets) for b in cos}
    R = len(cosets)
    lam = [[[Surd(0)] * R for _ in range(R)] for _ in range(R)]
    for A, CA in enumerate(cosets):
        for Bi, CB in enumerate(cosets):
            coeff = [Surd(0)] * tensor.rank
            for b in CA:
                for c in CB:
                    for k in range(tensor.rank):
                        if tensor.lam[b][c][k]:
                            coeff[k] = coeff[k] + tensor.lam[b][c][k]
            for F, CF in enumerate(cosets):
                vals = {coeff[k] for k in CF}
                if len(vals) != 1:
                    raise ArithmeticError("product coefficients not constant on a double coset")
                lam[A][Bi][F] = vals.pop() / oN
    degrees = tuple(sum(Fraction(tensor.degrees[b]) for b in cos) / oN for cos in cosets)
    star = tuple(where[tensor.star[cos[0]]] for cos in cosets)
    labels = tuple("{" + ",".join(tensor.name(b) for b in cos) + "}" for cos in cosets)
    return StructureTensor(lam, degrees, star, labels)
