"""Build the transition matrix P and the 2x2 matrices B_i of a standard basis.

P has rows indexed by the standard basis e0..e5 of R + R + M2(R) (the
M2 coordinates ordered r, u, s, t for the (1,1), (2,2), (1,2), (2,1)
entries) and columns indexed by b0..b5.  So B_j = [[P[2][j], P[4][j]],
[P[5][j], P[3][j]]].

The rows are filled in one pair at a time: P0 and P1 are the degree and
phi rows, P2 + P3 is the chi row, P4 - P5 is a multiple of e4 - e5 in the
b-coordinates, P4 + P5 is the unique direction compatible with B1 diagonal
and B2, B3 symmetric, and P2 - P3 is the null vector of a rank-3 rational
system.  Every row pair is then scaled to weighted norm 2n/m_chi.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .spectrum import CharacterTable, ParameterSet, character_table, validate
from .surd import Surd, normalize_sqrt

__all__ = [
    "Mat2",
    "SignChoice",
    "TransitionMatrix",
    "StandardBasis",
    "VerificationReport",
    "ConstructionError",
    "inner_product_delta",
    "distinct_ratio_permutation",
    "build_transition",
    "assemble_basis",
    "verify_transition",
    "construct",
]

_ZERO = Surd(0)
_ONE = Surd(1)


class ConstructionError(ValueError):
    pass


class Mat2:
    """2x2 matrix with Surd entries, stored row-major as (a, b, c, d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (x if isinstance(x, Surd) else Surd(x) for x in (a, b, c, d))

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> Mat2:
        return cls(0, 0, 0, 0)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __add__(self, o: Mat2) -> Mat2:
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: Mat2) -> Mat2:
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o):
        if isinstance(o, Mat2):
            return Mat2(
                self.a * o.a + self.b * o.c,
                self.a * o.b + self.b * o.d,
                self.c * o.a + self.d * o.c,
                self.c * o.b + self.d * o.d,
            )
        return Mat2(self.a * o, self.b * o, self.c * o, self.d * o)

    def __rmul__(self, o):
        return Mat2(self.a * o, self.b * o, self.c * o, self.d * o)

    def __eq__(self, o):
        return isinstance(o, Mat2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    @property
    def T(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    def trace(self) -> Surd:
        return self.a + self.d

    def det(self) -> Surd:
        return self.a * self.d - self.b * self.c

    def is_symmetric(self) -> bool:
        return self.b == self.c

    def __repr__(self):
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows()]

    def to_text(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows()]

    @classmethod
    def from_json(cls, obj) -> Mat2:
        (a, b), (c, d) = obj
        return cls(*(Surd.from_json(x) for x in (a, b, c, d)))


@dataclass(frozen=True)
class SignChoice:
    """Signs of the P4-P5, P4+P5 and P2-P3 row scalings."""

    e1: int = 1
    e2: int = 1
    e3: int = 1

    def __post_init__(self):
        if any(e not in (1, -1) for e in (self.e1, self.e2, self.e3)):
            raise ValueError("sign choices must be +1 or -1")

    @classmethod
    def all(cls):
        return [cls(*s) for s in product((1, -1), repeat=3)]

    @classmethod
    def parse(cls, text: str) -> SignChoice:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three signs like '+,+,-', got {text!r}")
        table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
        try:
            return cls(*(table[p] for p in parts))
        except KeyError as exc:
            raise ValueError(f"bad sign in {text!r}") from exc

    @property
    def product(self) -> int:
        return self.e1 * self.e2 * self.e3

    def __str__(self):
        return ",".join("+" if e > 0 else "-" for e in (self.e1, self.e2, self.e3))


@dataclass(frozen=True)
class TransitionMatrix:
    rows: tuple  # 6 tuples of 6 Surds

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def replace_row(self, i, new_row) -> TransitionMatrix:
        rows = list(self.rows)
        rows[i] = tuple(x if isinstance(x, Surd) else Surd(x) for x in new_row)
        return TransitionMatrix(tuple(rows))

    def to_text(self):
        return [[str(x) for x in r] for r in self.rows]

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, obj) -> TransitionMatrix:
        return cls(tuple(tuple(Surd.from_json(x) for x in r) for r in obj))


@dataclass(frozen=True)
class StandardBasis:
    """Six basis elements (delta_i, phi_i, B_i) in the working index order.

    ``perm[i]`` is the index of the input parameter set that sits at working
    position i (``perm[0] == 0``).  It differs from the identity only when
    slot 3 had to be swapped with another symmetric index so that
    phi_3/delta_3 != phi_4/delta_4.
    """

    table: CharacterTable
    B: tuple  # six Mat2
    signs: SignChoice
    perm: tuple = (0, 1, 2, 3, 4, 5)
    transition: TransitionMatrix | None = field(default=None, compare=False)

    @property
    def params(self) -> ParameterSet:
        return self.table.params

    @property
    def deltas(self):
        return self.table.params.deltas

    @property
    def phis(self):
        return self.table.params.phis

    @property
    def distinct_index(self) -> int:
        """Index in the input labeling that was placed in slot 3."""
        return self.perm[3]

    def element(self, i: int):
        return (self.deltas[i], self.phis[i], self.B[i])

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "signs": [self.signs.e1, self.signs.e2, self.signs.e3],
            "permutation": list(self.perm),
            "B": [m.to_json() for m in self.B],
            "transition": self.transition.to_json() if self.transition is not None else None,
        }

    @classmethod
    def from_json(cls, obj) -> StandardBasis:
        table = character_table(ParameterSet.from_json(obj["params"]))
        P = obj.get("transition")
        return cls(
            table,
            tuple(Mat2.from_json(m) for m in obj["B"]),
            SignChoice(*obj["signs"]),
            tuple(obj["permutation"]),
            TransitionMatrix.from_json(P) if P is not None else None,
        )


@dataclass
class VerificationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, name: str, detail: str = ""):
        self.violations.append(f"{name}: {detail}" if detail else name)

    def __bool__(self):
        return self.ok


def inner_product_delta(u, v, weights) -> Surd:
    """Weighted dot product sum u_i v_i / w_i."""
    if len(u) != len(v) or len(u) != len(weights):
        raise ValueError("vectors and weights must have the same length")
    acc = Surd(0)
    for a, b, w in zip(u, v, weights):
        w = Fraction(w)
        if w <= 0:
            raise ValueError(f"weights must be positive, got {w}")
        if a and b:
            acc = acc + (a if isinstance(a, Surd) else Surd(a)) * b / w
    return acc


def _rational_inner(u, v, weights) -> Fraction:
    return sum((Fraction(a) * b / w for a, b, w in zip(u, v, weights)), Fraction(0))


def distinct_ratio_permutation(params: ParameterSet) -> tuple:
    """Permutation of 0..5 moving the largest symmetric index with a ratio
    different from phi4/delta4 into slot 3."""
    d, p = params.deltas, params.phis
    r4 = p[4] / d[4]
    cand = [i for i in (1, 2, 3) if p[i] / d[i] != r4]
    if not cand:
        raise ConstructionError("all symmetric ratios equal phi4/delta4")
    k = max(cand)
    perm = [0, 1, 2, 3, 4, 5]
    perm[k], perm[3] = perm[3], perm[k]
    return tuple(perm)


def permute_params(params: ParameterSet, perm) -> ParameterSet:
    d, p = params.deltas, params.phis
    return ParameterSet(tuple(d[perm[i]] for i in range(1, 5)), tuple(p[perm[i]] for i in range(1, 5)))


def _nullspace_1d(rows: list[list[Fraction]]) -> list[Fraction]:
    """Exact one-dimensional null space of a rational matrix (raises otherwise)."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise ConstructionError(f"linear system for P2-P3 has rank {len(pivots)}, expected {ncols - 1}")
    f = free[0]
    v = [Fraction(0)] * ncols
    v[f] = Fraction(1)
    for row_idx, c in enumerate(pivots):
        v[c] = -m[row_idx][f]
    return v


def _scaled(vec, target: Fraction, weights, sign: int):
    """Scale a rational vector to weighted squared norm ``target``."""
    norm = _rational_inner(vec, vec, weights)
    if norm == 0:
        raise ConstructionError("cannot normalize a zero vector")
    c = normalize_sqrt(target / norm) * sign
    return [c * x for x in vec]


def build_transition(table: CharacterTable, signs: SignChoice = SignChoice()) -> TransitionMatrix:
    """Construct P for a character table whose slot 3 has a distinct ratio."""
    D, Phi = table.params.deltas, table.params.phis
    n, m_chi = table.n, table.m_chi
    a = [p / d for p, d in zip(Phi, D)]
    if a[3] == a[4]:
        raise ConstructionError("slot 3 must satisfy phi3/delta3 != phi4/delta4; permute first")
    target = 2 * n / m_chi

    p0 = [Surd(x) for x in D]
    p1 = [Surd(x) for x in Phi]
    chi = list(table.chi)

    # P4 - P5: only the b4, b5 columns differ
    d45 = _scaled([0, 0, 0, 0, 1, -1], target, D, signs.e1)

    # P4 + P5 = (0, 0, 2x, 2y, z, z): zero on b1 (B1 diagonal), orthogonal to P0 and P1
    x, y, z = a[4] - a[3], a[2] - a[4], a[3] - a[2]
    s45 = _scaled([0, 0, 2 * x, 2 * y, z, z], target, D, signs.e2)

    # P2 - P3 = (0, v1, v2, v3, v4, v4): orthogonal to P0, P1 and P4 + P5
    system = [
        [Fraction(1), Fraction(1), Fraction(1), Fraction(2)],
        [a[1], a[2], a[3], 2 * a[4]],
        [Fraction(0), x / D[2], y / D[3], z / D[4]],
    ]
    v = _nullspace_1d(system)
    lead = next(c for c in v if c != 0)
    if lead < 0:
        v = [-c for c in v]
    d23 = _scaled([0, v[0], v[1], v[2], v[3], v[3]], target, D, signs.e3)

    half = Fraction(1, 2)
    p2 = [(Surd(c) + w) * half for c, w in zip(chi, d23)]
    p3 = [(Surd(c) - w) * half for c, w in zip(chi, d23)]
    p4 = [(s + t) * half for s, t in zip(s45, d45)]
    p5 = [(s - t) * half for s, t in zip(s45, d45)]
    return TransitionMatrix(tuple(tuple(r) for r in (p0, p1, p2, p3, p4, p5)))


def assemble_basis(P: TransitionMatrix, table: CharacterTable, signs: SignChoice = SignChoice(), perm=None) -> StandardBasis:
    B = tuple(Mat2(P[2, j], P[4, j], P[5, j], P[3, j]) for j in range(6))
    return StandardBasis(table, B, signs, tuple(perm) if perm else (0, 1, 2, 3, 4, 5), P)


def verify_transition(P: TransitionMatrix, table: CharacterTable) -> VerificationReport:
    rep = VerificationReport()
    D, Phi = table.params.deltas, table.params.phis
    n = table.n
    mult = (Fraction(1), table.m_phi) + (table.m_chi,) * 4

    if tuple(P.row(0)) != tuple(Surd(x) for x in D):
        rep.fail("row0", "must equal the degree row")
    if tuple(P.row(1)) != tuple(Surd(x) for x in Phi):
        rep.fail("row1", "must equal the phi row")
    for j in range(4):
        if P[4, j] != P[5, j]:
            rep.fail("shape", f"s_{j} != t_{j} (B_{j} not symmetric)")
    if P[4, 4] != P[5, 5] or P[5, 4] != P[4, 5]:
        rep.fail("shape", "B5 is not the transpose of B4 in the s/t entries")
    if P[2, 4] != P[2, 5] or P[3, 4] != P[3, 5]:
        rep.fail("shape", "B5 is not the transpose of B4 in the diagonal entries")
    if P[4, 1] or P[5, 1]:
        rep.fail("shape", "B1 is not diagonal")
    if (P[2, 0], P[3, 0], P[4, 0], P[5, 0]) != (_ONE, _ONE, _ZERO, _ZERO):
        rep.fail("shape", "B0 is not the identity")

    for i in range(6):
        for j in range(i, 6):
            got = inner_product_delta(P.row(i), P.row(j), D)
            want = Surd(n / mult[i]) if i == j else _ZERO
            if got != want:
                rep.fail("orthogonality", f"(P{i},P{j})_delta = {got}, expected {want}")

    # Q_ij = m_j P_ji / delta_i must satisfy P Q = n I
    Q = [[P[j, i] * (mult[j] / D[i]) for j in range(6)] for i in range(6)]
    for i in range(6):
        for j in range(6):
            acc = Surd(0)
            for k in range(6):
                acc = acc + P[i, k] * Q[k][j]
            if acc != Surd(n if i == j else 0):
                rep.fail("PQ", f"(PQ)[{i}][{j}] = {acc}")

    B = [Mat2(P[2, j], P[4, j], P[5, j], P[3, j]) for j in range(6)]
    total = Mat2.zero()
    wphi = Mat2.zero()
    wchi = Mat2.zero()
    for j in range(6):
        total = total + B[j]
        wphi = wphi + B[j] * (Phi[j] / D[j])
        wchi = wchi + B[j] * (Fraction(table.chi[j]) / D[j])
    if total != Mat2.zero():
        rep.fail("idempotent", "sum of B_i is not zero")
    if wphi != Mat2.zero():
        rep.fail("idempotent", "sum of (phi_i/delta_i) B_i is not zero")
    if wchi != Mat2.identity() * (n / table.m_chi):
        rep.fail("idempotent", "sum of (chi_i/delta_i) B_i is not (n/m_chi) I")
    for j in range(1, 6):
        tau = Surd(D[j] + table.m_phi * Phi[j]) + B[j].trace() * table.m_chi
        if tau:
            rep.fail("trace", f"tau(b_{j}) = {tau}, expected 0")
    return rep


def construct(params: ParameterSet, signs: SignChoice = SignChoice(), check: bool = True) -> StandardBasis:
    """Permute if needed, build P and assemble the standard basis.

    The returned basis is in the working order; ``basis.perm`` maps it
    back to the input labeling.
    """
    reason = validate(params)
    if reason is not None:
        raise ConstructionError(reason)
    perm = distinct_ratio_permutation(params)
    work = permute_params(params, perm)
    table = character_table(work)
    P = build_transition(table, signs)
    if check:
        rep = verify_transition(P, table)
        if not rep.ok:
            raise ConstructionError("; ".join(rep.violations))
    return assemble_basis(P, table, signs, perm)
