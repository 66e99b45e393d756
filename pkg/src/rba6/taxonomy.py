"""Structural classification of rank-6 algebras.

Closed subsets and quotients, the kernel of phi, center fusion and the
rank-4 fusion profile, the evenness filter for association schemes, the
m_phi = 1 trichotomy with its integrality criteria, and family labels for
census records.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations
from math import gcd, isqrt

from .spectrum import CharacterTable, ParameterSet, character_table
from .tensor import StructureTensor

__all__ = [
    "ClosedSubset",
    "FamilyLabel",
    "BipartiteWitness",
    "MPhi1Result",
    "EvennessResult",
    "closed_subsets",
    "kernel_phi",
    "center_fusion",
    "rank4_fusion_profile",
    "evenness_filter",
    "classify_mphi1",
    "find_bipartite_witness",
    "real_bipartite_integral",
    "lemma_2ks_generator",
    "match_family",
    "literature_notes",
]


def _frac(x) -> str:
    return str(Fraction(x))


def _support(tensor: StructureTensor, a: int, b: int) -> set:
    return {k for k in range(tensor.rank) if tensor.lam[a][b][k]}


@dataclass(frozen=True)
class ClosedSubset:
    indices: tuple
    order: Fraction
    star_invariant: bool
    normal: bool

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self.indices

    @property
    def is_trivial(self) -> bool:
        return len(self.indices) in (1, 6)

    def to_json(self):
        return {
            "indices": list(self.indices),
            "order": _frac(self.order),
            "star_invariant": self.star_invariant,
            "normal": self.normal,
        }


def _is_closed_set(tensor: StructureTensor, N) -> bool:
    Ns = set(N)
    return all(_support(tensor, a, b) <= Ns for a in Ns for b in Ns)


def _is_normal(tensor: StructureTensor, N) -> bool:
    # N b and b N have the same support for every basis element b
    for b in range(tensor.rank):
        left = set().union(*(_support(tensor, x, b) for x in N))
        right = set().union(*(_support(tensor, b, x) for x in N))
        if left != right:
            return False
    return True


def _make_closed(tensor: StructureTensor, N) -> ClosedSubset:
    N = tuple(sorted(N))
    return ClosedSubset(
        N,
        sum(Fraction(tensor.degrees[i]) for i in N),
        all(tensor.star[i] in N for i in N),
        _is_normal(tensor, N),
    )


def closed_subsets(tensor: StructureTensor) -> list[ClosedSubset]:
    """All index sets containing 0 closed under product supports (brute force)."""
    others = list(range(1, tensor.rank))
    out = []
    for r in range(len(others) + 1):
        for combo in combinations(others, r):
            N = (0,) + combo
            if _is_closed_set(tensor, N):
                out.append(_make_closed(tensor, N))
    return out


def is_primitive(tensor: StructureTensor) -> bool:
    return all(c.is_trivial for c in closed_subsets(tensor))


@dataclass(frozen=True)
class KernelResult:
    indices: tuple
    closed: bool | None

    def to_json(self):
        return {"indices": list(self.indices), "closed": self.closed}


def kernel_phi(table: CharacterTable | ParameterSet, tensor: StructureTensor | None = None) -> KernelResult:
    """Indices with phi_i = delta_i; closedness is checked when a tensor is given."""
    params = table.params if isinstance(table, CharacterTable) else table
    D, P = params.deltas, params.phis
    idx = tuple(i for i in range(6) if P[i] == D[i])
    closed = None if tensor is None else _is_closed_set(tensor, idx)
    return KernelResult(idx, closed)


def center_fusion(params: ParameterSet):
    """Partition (I, J) of 1..5 when phi_i/delta_i takes at most three values.

    I collects the indices whose ratio equals the ratio of the smallest
    index with ratio != 1; returns None when there are four or more ratios.
    """
    D, P = params.deltas, params.phis
    ratios = [P[i] / D[i] for i in range(6)]
    if len(set(ratios)) > 3:
        return None
    alpha = next((r for r in ratios[1:] if r != 1), None)
    if alpha is None:
        return None
    I = tuple(i for i in range(1, 6) if ratios[i] == alpha)
    J = tuple(i for i in range(1, 6) if ratios[i] != alpha)
    if not J:
        return None
    return I, J


@dataclass(frozen=True)
class FusionProfile:
    degrees: tuple
    multiplicities: tuple

    def to_json(self):
        return {"degrees": [_frac(d) for d in self.degrees], "multiplicities": [_frac(m) for m in self.multiplicities]}


def center_profile(params: ParameterSet) -> FusionProfile | None:
    part = center_fusion(params)
    if part is None:
        return None
    D = params.deltas
    table = character_table(params)
    I, J = part
    return FusionProfile(
        (Fraction(1), sum(D[i] for i in I), sum(D[j] for j in J)),
        (Fraction(1), table.m_phi, 2 * table.m_chi),
    )


def rank4_fusion_profile(params: ParameterSet, partition, K) -> FusionProfile:
    """Degrees 1, o(K), o(I-K), o(J) and multiplicities 1, m_phi, m_chi, m_chi."""
    I, J = (tuple(x) for x in partition)
    K = tuple(sorted(set(K)))
    star = (0, 1, 2, 3, 5, 4)
    if not K or not set(K) < set(I):
        raise ValueError(f"K={K} must be a nonempty proper subset of I={I}")
    if {star[k] for k in K} != set(K):
        raise ValueError(f"K={K} is not *-invariant")
    D = params.deltas
    table = character_table(params)
    rest = [i for i in I if i not in K]
    return FusionProfile(
        (Fraction(1), sum(D[k] for k in K), sum(D[i] for i in rest), sum(D[j] for j in J)),
        (Fraction(1), table.m_phi, table.m_chi, table.m_chi),
    )


def rank4_fusion_profiles(params: ParameterSet) -> list[tuple[tuple, FusionProfile]]:
    """Profiles for every admissible K, taking either ratio class as I
    (any ratio other than 1 may pick the class)."""
    part = center_fusion(params)
    if part is None:
        return []
    star = (0, 1, 2, 3, 5, 4)
    out = []
    for I, J in (part, part[::-1]):
        for r in range(1, len(I)):
            for K in combinations(I, r):
                if {star[k] for k in K} == set(K):
                    out.append((K, rank4_fusion_profile(params, (I, J), K)))
    return out


@dataclass(frozen=True)
class EvennessResult:
    passed: bool
    witnesses: tuple = ()  # (i, j, lambda_iji, delta_i)

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"passed": self.passed, "witnesses": [[i, j, str(l), _frac(d)] for i, j, l, d in self.witnesses]}


def evenness_filter(tensor: StructureTensor) -> EvennessResult:
    """For symmetric j != 0, i != j with delta_i > 1, lambda_iji * delta_i must be even."""
    bad = []
    for j in range(1, tensor.rank):
        if tensor.star[j] != j:
            continue
        for i in range(1, tensor.rank):
            d = Fraction(tensor.degrees[i])
            if i == j or d <= 1:
                continue
            lam = tensor.lam[i][j][i].as_integer()
            if lam is None or d.denominator != 1:
                continue
            if (lam * d.numerator) % 2:
                bad.append((i, j, lam, d))
    return EvennessResult(not bad, tuple(bad))


@dataclass(frozen=True)
class BipartiteWitness:
    alpha: int
    gamma: int
    k1: int
    k2: int
    beta: int
    roles: tuple = (1, 2, 3)  # indices playing the parts of delta_1, delta_2, delta_3

    def to_json(self):
        return {
            "alpha": self.alpha,
            "gamma": self.gamma,
            "k1": self.k1,
            "k2": self.k2,
            "beta": self.beta,
            "roles": list(self.roles),
        }


def _witness_for(x: int, y: int, z: int, d4: int):
    g = gcd(x, y)
    k1, k2 = x // g, y // g
    if z % (k1 * k2):
        return None
    a2 = z // (k1 * k2)
    alpha = isqrt(a2)
    if alpha * alpha != a2 or g % alpha:
        return None
    gamma = g // alpha
    if not all(v % 2 for v in (alpha, gamma, k1, k2)):
        return None
    if alpha * alpha >= 2 * gamma:
        return None
    for v in (gamma * k1 * k2, gamma * k1 * (alpha * gamma * k1 - 1),
              gamma * k2 * (alpha * gamma * k2 - 1), k1 * k2 * (alpha * alpha * k1 * k2 - 1)):
        if v % d4:
            return None
    return alpha, gamma, k1, k2, gamma * k1 * k2 // d4


def find_bipartite_witness(params: ParameterSet) -> BipartiteWitness | None:
    """Odd integers (alpha, gamma, k1, k2) certifying integrality of a
    non-real bipartite parameter set, trying every assignment of the
    symmetric degrees to the three roles.  The labelling with delta_3 as
    alpha^2 k1 k2 and k1 < k2 is preferred."""
    D = params.deltas
    if any(Fraction(D[i]).denominator != 1 for i in range(1, 5)):
        return None
    d4 = int(D[4])
    found = []
    for roles in permutations((1, 2, 3)):
        x, y, z = (int(D[r]) for r in roles)
        w = _witness_for(x, y, z, d4)
        if w:
            found.append(BipartiteWitness(*w, roles=roles))
    if not found:
        return None
    # keep delta_3 in the alpha^2 k1 k2 slot when possible, then prefer k1 < k2
    found.sort(key=lambda w: (w.roles[2] != 3, w.k1 >= w.k2, w.roles))
    return found[0]


def real_bipartite_integral(params: ParameterSet, kernel: tuple) -> bool:
    """delta_1 = 1, delta_2 = delta_3 = delta_4 even, 8 | (n - 2), with the
    symmetric index outside the kernel playing the part of b1."""
    D = params.deltas
    outside = [i for i in (1, 2, 3) if i not in kernel]
    inside = [i for i in (1, 2, 3) if i in kernel]
    if len(outside) != 1 or len(inside) != 2:
        return False
    s = outside[0]
    k = D[inside[0]]
    n = params.order
    return (
        D[s] == 1
        and D[inside[1]] == k
        and D[4] == k
        and k.denominator == 1
        and k.numerator % 2 == 0
        and n.denominator == 1
        and (n.numerator - 2) % 8 == 0
    )


@dataclass(frozen=True)
class MPhi1Result:
    kind: str  # wreath-rank5 | real-bipartite | non-real-bipartite
    kernel: tuple
    integral: bool
    witness: BipartiteWitness | None = None
    bounds_ok: bool | None = None

    def to_json(self):
        return {
            "kind": self.kind,
            "kernel": list(self.kernel),
            "integral": self.integral,
            "witness": self.witness.to_json() if self.witness else None,
            "bounds_ok": self.bounds_ok,
        }


def classify_mphi1(params: ParameterSet, table: CharacterTable | None = None, tensor=None) -> MPhi1Result:
    """Split an m_phi = 1 set into the wreath / real-bipartite / non-real-bipartite
    families and give the integrality verdict for integral table algebras."""
    table = table or character_table(params)
    if table.m_phi != 1:
        raise ValueError(f"m_phi = {table.m_phi}, expected 1")
    D = params.deltas
    ker = kernel_phi(params).indices
    if len(ker) == 5:
        return MPhi1Result("wreath-rank5", ker, False)
    if len(ker) != 3:
        raise AssertionError(f"kernel of phi has {len(ker)} elements; expected 3 or 5")
    if 4 in ker and 5 in ker:
        w = find_bipartite_witness(params)
        # each symmetric degree lies between the ratio and the product of the other two
        bounds = all(
            max(D[b] / D[c], D[c] / D[b]) <= D[a] <= D[b] * D[c]
            for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2))
        )
        return MPhi1Result("non-real-bipartite", ker, w is not None, w, bounds)
    inside = [i for i in (1, 2, 3) if i in ker]
    s = next(i for i in (1, 2, 3) if i not in ker)
    a, b = inside
    bounds = all(D[i] >= 2 for i in (a, b, 4)) and D[s] >= max(D[a] / D[b], D[b] / D[a])
    return MPhi1Result("real-bipartite", ker, real_bipartite_integral(params, ker), None, bounds)


def lemma_2ks_generator(k1: int, k2: int) -> ParameterSet | None:
    """delta = (gamma k1, gamma k2, k1 k2, k1 k2) with gamma = (k1 k2 + 1)/(k1 + k2)
    when gamma is an odd integer and k1 + k2 divides k_i^2 - 1."""
    if k1 <= 0 or k2 <= 0 or k1 % 2 == 0 or k2 % 2 == 0:
        return None
    s = k1 + k2
    if (k1 * k2 + 1) % s:
        return None
    gamma = (k1 * k2 + 1) // s
    if gamma % 2 == 0:
        return None
    if (k1 * k1 - 1) % s or (k2 * k2 - 1) % s:
        return None
    d = (gamma * k1, gamma * k2, k1 * k2, k1 * k2)
    return ParameterSet(d, (-d[0], -d[1], -d[2], d[3]))


# -- family labels -----------------------------------------------------------

FAMILY_TAGS = (
    "U⋊C2",
    "T⋊C2",
    "C3:K",
    "U:K-or-D",
    "T:K-or-D",
    "K:T",
    "PG",
    "p-array",
    "E∘K-wreath",
    "primitive",
    "other",
)

# Matching order, most specific first:
#   E∘K-wreath, U⋊C2, T⋊C2, T:C2 (non-real bipartite, tagged T:K-or-D),
#   p-array, PG, C3:K, K:T, U:K-or-D, T:K-or-D, primitive, other.
MATCH_ORDER = (
    "E∘K-wreath", "U⋊C2", "T⋊C2", "T:C2", "p-array", "PG", "C3:K", "K:T", "U:K-or-D", "T:K-or-D",
    "primitive", "other",
)


@dataclass(frozen=True)
class FamilyLabel:
    tag: str
    text: str
    parameters: dict = field(default_factory=dict)
    best_effort: bool = True

    def to_json(self):
        return {"tag": self.tag, "text": self.text, "parameters": self.parameters, "best_effort": self.best_effort}


def _num(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _quotient_name(t: Fraction, rank2: str = "K") -> str:
    t = Fraction(t)
    return f"{rank2}_{_num(t)}" if t.denominator == 1 else f"D_{_num(t)}"


def _match_e_circ_k(params):
    D, P = params.deltas, params.phis
    ones = [i for i in (1, 2, 3) if P[i] == -1]
    if len(ones) == 1 and all(P[i] == 0 for i in (1, 2, 3, 4) if i != ones[0]):
        i = ones[0]
        m = 1 + D[i]
        n = params.order
        return FamilyLabel("E∘K-wreath", f"E_{_num(n / m)} ∘ K_{_num(m)}", {"m": _num(m), "index": i})
    return None


def _split_thin(params):
    """(s, others) when exactly one symmetric index has delta = 1, phi = -1."""
    D, P = params.deltas, params.phis
    thin = [i for i in (1, 2, 3) if D[i] == 1 and P[i] == -1]
    if not thin or (len(thin) > 1 and D[4] != 1):
        return None
    s = thin[0]
    return s, [i for i in (1, 2, 3) if i != s]


def _match_u_c2(params):
    D, P = params.deltas, params.phis
    sp = _split_thin(params)
    if not sp:
        return None
    _, (a, b) = sp
    k = D[4]
    if D[a] == D[b] == k and P[a] == P[b] == k and P[4] == -k:
        return FamilyLabel("U⋊C2", f"U_{_num(params.order / 2)} ⋊ C_2", {"k": _num(k)})
    return None


def _match_t_c2(params):
    D, P = params.deltas, params.phis
    sp = _split_thin(params)
    if not sp:
        return None
    _, (a, b) = sp
    k = D[4]
    if D[a] == D[b] == k and P[a] == P[b] == -k and P[4] == k:
        text = f"T_{_num(params.order / 2)} ⋊ C_2"
        if params.order == 6:
            text = "S_3 = C_3 ⋊ C_2"
        return FamilyLabel("T⋊C2", text, {"k": _num(k)})
    return None


def _match_t_colon_c2(params, table):
    if table.m_phi != 1:
        return None
    D, P = params.deltas, params.phis
    if P[4] == D[4] and all(P[i] == -D[i] for i in (1, 2, 3)):
        return FamilyLabel("T:K-or-D", f"T_{_num(params.order / 2)}:C_2", {"m": _num(params.order / 2), "t": "2"})
    return None


def _match_p_array(params):
    D, P = params.deltas, params.phis
    p = 2 * D[4] + 1
    if p.denominator != 1 or p % 4 != 3:
        return None
    want_d = sorted([p + 1, (p * p - 1) / 2, (p * p - 1) / 2])
    want_p = -(p - 1) / 2
    sym = sorted(zip((D[1], D[2], D[3]), (P[1], P[2], P[3])))
    want = sorted(zip(want_d, [-1 if d == p + 1 else want_p for d in want_d]))
    if sym == want and P[4] == (p - 1) / 2:
        pi = int(p)
        return FamilyLabel("p-array", f"T_{pi}:K_{pi + 2}, {pi}-array", {"p": pi})
    return None


def _match_pg(params):
    D, P = params.deltas, params.phis
    n = params.order
    for q in range(2, 64):
        for r in range(1, 8):
            qr = q**r
            if q * (qr - 1) // (q - 1) > n:
                break
            d = (
                Fraction(q * (qr - 1), q - 1),
                Fraction(q ** (2 * r + 1) * (qr - 1), q - 1),
                Fraction(q * (qr - 1) ** 3, (q - 1) ** 3),
                Fraction(q ** (r + 1) * (qr - 1) ** 2, (q - 1) ** 2),
            )
            c = q ** (r - 1)
            ph = (-1, -c, -c, c)
            if 1 + d[0] + d[1] + d[2] + 2 * d[3] != n:
                continue
            got = sorted(zip((D[1], D[2], D[3]), (P[1], P[2], P[3])))
            want = sorted(zip(d[:3], ph[:3]))
            if got == want and (D[4], P[4]) == (d[3], ph[3]):
                return FamilyLabel("PG", f"PG({r},{q})", {"r": r, "q": q})
    return None


def _match_c3k(params):
    D, P = params.deltas, params.phis
    l = D[1]
    if D[2] == D[3] == l and D[4] == 1 and P[1] == P[2] == P[3] == -1 and P[4] == 1:
        return FamilyLabel("C3:K", f"C_3:K_{_num(params.order / 3)}", {"l": _num(l)})
    return None


def _nontrivial(closed):
    return [c for c in closed if not c.is_trivial]


def _match_k_t(params, tensor, closed):
    # a symmetric rank-2 closed subset {b0, b_i} is the only nontrivial one
    nt = _nontrivial(closed)
    if len(nt) != 1:
        return None
    c = nt[0]
    if len(c) != 2 or tensor.star[c.indices[1]] != c.indices[1]:
        return None
    return FamilyLabel("K:T", f"K_{_num(c.order)}:T_{_num(params.order / c.order)}", {"m": _num(c.order)})


def _match_u_k(params, table, tensor, closed):
    D, P = params.deltas, params.phis
    pairs = [(a, b) for a, b in ((1, 2), (1, 3), (2, 3)) if D[a] == D[b] and P[a] == D[a] and P[b] == D[b]]
    if not pairs:
        return None
    a, b = pairs[0]
    c = next(i for i in (1, 2, 3) if i not in (a, b))
    if P[c] != -D[c] / table.m_phi or P[4] != -D[4] / table.m_phi:
        return None
    if closed is not None and not any(set(x.indices) == {0, a, b} for x in closed):
        return None
    m = 1 + 2 * D[a]
    t = params.order / m
    d1 = D[a]
    sep = ":" if d1.denominator == 1 and d1.numerator % 2 == 0 else " ⋊ "
    return FamilyLabel("U:K-or-D", f"U_{_num(m)}{sep}{_quotient_name(t)}", {"m": _num(m), "t": _num(t)})


def _match_t_k(params, tensor, closed):
    if closed is None:
        return None
    hit = [x for x in closed if set(x.indices) == {0, 4, 5}]
    if not hit:
        return None
    m = hit[0].order
    t = params.order / m
    name = "C_2" if t == 2 else _quotient_name(t)
    return FamilyLabel("T:K-or-D", f"T_{_num(m)}:{name}", {"m": _num(m), "t": _num(t)})


def match_family(params: ParameterSet, tensor: StructureTensor | None = None, closed=None) -> FamilyLabel:
    """First matching template, most specific first (see ``MATCH_ORDER``)."""
    table = character_table(params)
    for fn in (_match_e_circ_k, _match_u_c2, _match_t_c2):
        lab = fn(params)
        if lab:
            return lab
    lab = _match_t_colon_c2(params, table)
    if lab:
        return lab
    for fn in (_match_p_array, _match_pg, _match_c3k):
        lab = fn(params)
        if lab:
            return lab
    if tensor is not None and closed is None:
        closed = closed_subsets(tensor)
    if tensor is not None:
        lab = _match_k_t(params, tensor, closed)
        if lab:
            return lab
    lab = _match_u_k(params, table, tensor, closed)
    if lab:
        return lab
    if tensor is not None:
        lab = _match_t_k(params, tensor, closed)
        if lab:
            return lab
        if all(c.is_trivial for c in closed):
            return FamilyLabel("primitive", "primitive", {})
    return FamilyLabel("other", "other", {})


@lru_cache(maxsize=1)
def _literature():
    text = resources.files("rba6").joinpath("data/literature.json").read_text(encoding="utf-8")
    return json.loads(text)


def literature_notes(profile: FusionProfile | None) -> list[dict]:
    """Static literature facts keyed by a degree profile (never computed here)."""
    if profile is None:
        return []
    key = sorted(Fraction(d) for d in profile.degrees)
    return [
        entry
        for entry in _literature()["entries"]
        if sorted(Fraction(d) for d in entry["degrees"]) == key
        and ("multiplicities" not in entry
             or sorted(Fraction(m) for m in entry["multiplicities"]) == sorted(Fraction(m) for m in profile.multiplicities))
    ]
