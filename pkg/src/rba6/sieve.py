"""Enumerate integral noncommutative rank-6 parameter sets up to a given order.

The search never walks the full box of (delta, phi) values.  For a fixed
order n each slot (delta_i, phi_i, chi_i) determines m_phi on its own:

    m_phi = ((n-1) chi + 2 delta) / (chi - 2 phi),
    m_chi = -((n-1) phi + delta) / (chi - 2 phi).

Integrality of the structure constants forces chi_i, det B_i and every
tr(B_a B_b^T) to be integers, which leaves a short list of admissible
slots per n.  Slots are bucketed by m_phi and three symmetric slots plus one
non-symmetric slot are joined on the linear sums and on sum phi^2/delta.
Survivors go through an exact integer test of all structure constants
(their sums lambda_ijk + lambda_jik are rational; their differences are
square roots of rationals), and every emitted record is rebuilt from
scratch with surd arithmetic.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
from math import gcd, isqrt

import numpy as np

from .realize import construct, verify_transition
from .spectrum import CharacterTable, ParameterSet, character_table, validate
from .taxonomy import (
    FamilyLabel,
    center_profile,
    classify_mphi1,
    closed_subsets,
    evenness_filter,
    match_family,
)
from .tensor import STAR, lambda_tensor

__all__ = [
    "CensusRecord",
    "canonicalize",
    "prune",
    "slot_table",
    "join_order",
    "lambda_screen",
    "candidates",
    "enumerate_census",
    "enumerate_bruteforce",
    "build_record",
    "reference_rows",
    "reference_view",
    "format_census",
]

log = logging.getLogger(__name__)


def canonicalize(params: ParameterSet) -> ParameterSet:
    """Sort the symmetric pairs (delta_i, phi_i), i = 1..3, in descending order."""
    sym = sorted(zip(params.delta[:3], params.phi[:3]), reverse=True)
    return ParameterSet(
        (sym[0][0], sym[1][0], sym[2][0], params.delta[3]),
        (sym[0][1], sym[1][1], sym[2][1], params.phi[3]),
    )


def prune(n_max: int, delta=(), phi=()) -> bool:
    """True when a partial assignment can be cut.

    ``delta`` and ``phi`` are prefixes of (d1, d2, d3, d4) and (p1, .., p4).
    A prefix is cut when the order bound is exceeded or it breaks |phi| <= delta;
    a complete assignment is also cut when it is inadmissible or the
    multiplicity m_chi is not positive.
    """
    slots_left = 4 - len(delta)
    weights = (1, 1, 1, 2)
    low = 1 + sum(w * d for w, d in zip(weights, delta)) + sum(weights[len(delta):])
    if low > n_max or slots_left < 0:
        return True
    if any(abs(p) > d for d, p in zip(delta, phi)):
        return True
    if len(delta) == 4 and len(phi) == 4:
        params = ParameterSet(tuple(delta), tuple(phi))
        if validate(params) is not None:
            return True
        try:
            character_table(params)
        except (AssertionError, ValueError):
            return True
    return False


# -- slot tables ---------------------------------------------------------------

def slot_table(n: int, symmetric: bool) -> dict:
    """Admissible (delta, phi, chi) slots of order n, bucketed by reduced m_phi."""
    out = defaultdict(list)
    dmax = n - 5 if symmetric else (n - 4) // 2
    w = 1 if symmetric else 2
    for d in range(1, dmax + 1):
        phis = np.arange(-d, d + 1, dtype=np.int64)
        A = (n - 1) * phis + d
        B = n * d - d * d
        # 2 tr(B B^T) >= tr(B)^2 bounds |chi|
        cmax = np.maximum(2 * np.abs(phis), (4 * B) // np.maximum(np.abs(A), 1) + 2)
        C = int(cmax.max())
        chi = np.arange(-C, C + 1, dtype=np.int64)
        P, X = np.meshgrid(phis, chi, indexing="ij")
        AA = (n - 1) * P + d
        den = X - 2 * P
        num = (n - 1) * X + 2 * d
        # den == 0 would need phi = -delta/(n-1), never an integer here
        ok = den != 0
        sgn = np.where(den < 0, -1, 1)
        den, num, AA = den * sgn, num * sgn, AA * sgn
        ok &= num > 0
        ok &= -AA > 0  # m_chi > 0
        ok &= np.abs(X) <= cmax[:, None]
        ok &= num >= den  # m_phi >= 1
        ok &= n * den * d >= num * (d + w * P * P)  # n/m_phi >= 1 + this slot's share
        negA = np.where(AA == 0, 1, -AA)
        G = B * den - num * P * P  # tr(B B^T) * m_chi * den
        ok &= (G % negA) == 0
        g = G // negA
        ok &= 2 * g >= X * X
        if symmetric:
            ok &= ((X * X - g) % 2) == 0  # det B integral
        else:
            G45 = -(d * d * den + num * P * P)  # tr(B4 B4)
            ok &= (G45 % negA) == 0
            g45 = G45 // negA
            ok &= ((X * X - g45) % 2) == 0
            ok &= g >= np.abs(g45)
        for p, x, nu, de in zip(*(a[np.nonzero(ok)].tolist() for a in (P, X, num, den))):
            q = gcd(nu, de)
            out[(nu // q, de // q)].append((d, p, x))
    return out


def join_order(n: int) -> list[tuple]:
    """Candidate (delta, phi) of order n in canonical form."""
    sym = slot_table(n, True)
    nonsym = slot_table(n, False)
    found = []
    for key, nl in nonsym.items():
        sl = sym.get(key)
        if not sl:
            continue
        Q = Fraction(n) / Fraction(*key)  # sum phi_i^2/delta_i over all six
        pairs = sorted({(d, p) for d, p, _ in sl}, reverse=True)
        pair_set = set(pairs)
        for d4, p4, _ in nl:
            rd = n - 1 - 2 * d4
            rp = -1 - 2 * p4
            rq = Q - 1 - Fraction(2 * p4 * p4, d4)
            for i, (d1, p1) in enumerate(pairs):
                if d1 > rd - 2:
                    continue
                for d2, p2 in pairs[i:]:
                    d3, p3 = rd - d1 - d2, rp - p1 - p2
                    if d3 < 1 or (d3, p3) > (d2, p2) or (d3, p3) not in pair_set:
                        continue
                    if Fraction(p1 * p1, d1) + Fraction(p2 * p2, d2) + Fraction(p3 * p3, d3) != rq:
                        continue
                    found.append(((d1, d2, d3, d4), (p1, p2, p3, p4)))
    return sorted(set(found))


# -- exact integer screen ------------------------------------------------------

def lambda_screen(d, p):
    """Exact integrality test of all structure constants from (delta, phi).

    Returns None when some constant is not an integer, else the pair
    (True, is_table_algebra).  Uses tr(B_a B_b^T) values only:
    lambda_ijk + lambda_jik is a rational expression in them, and
    (lambda_ijk - lambda_jik)^2 is -2 det of a 3x3 Gram matrix on sl2.
    """
    D = (1, d[0], d[1], d[2], d[3], d[3])
    P = (1, p[0], p[1], p[2], p[3], p[3])
    n = sum(D)
    if sum(P) != 0:
        return None
    Q = sum(Fraction(P[i] * P[i], D[i]) for i in range(6))
    mphi = Fraction(n) / Q
    mchi = (n - 1 - mphi) / 2
    if mchi <= 0:
        return None
    a, b = mphi.numerator, mphi.denominator
    c, e = mchi.numerator, mchi.denominator
    bc = b * c
    chi = [2]
    for i in range(1, 6):
        num = -(D[i] * b + a * P[i]) * e
        if num % bc:
            return None
        chi.append(num // bc)
    g = [[0] * 6 for _ in range(6)]
    g[0][0] = 2
    for i in range(1, 6):
        g[0][i] = g[i][0] = chi[i]
    for i in range(1, 6):
        for j in range(i, 6):
            num = ((n * D[i] if i == j else 0) - D[i] * D[j]) * b - a * P[i] * P[j]
            num *= e
            if num % bc:
                return None
            g[i][j] = g[j][i] = num // bc
    # tr(B_a B_b) = g[a][b*]
    t = [[g[x][STAR[y]] for y in range(6)] for x in range(6)]
    be2 = 2 * b * e
    ae2 = 2 * a * e
    cb = c * b
    ta = True
    for k in range(6):
        ks = STAR[k]
        den_s = n * D[k] * b * e
        den_r = 2 * e * n * D[k]
        for i in range(1, 6):
            for j in range(i, 6):
                s_num = (
                    be2 * D[i] * D[j] * D[k]
                    + ae2 * P[i] * P[j] * P[k]
                    + cb * (chi[i] * g[j][k] + chi[j] * g[i][k] + (t[i][j] - chi[i] * chi[j]) * chi[k])
                )
                if s_num % den_s:
                    return None
                S = s_num // den_s
                idx = (i, j, ks)
                M = [[2 * t[x][y] - chi[x] * chi[y] for y in idx] for x in idx]
                det = (
                    M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                    - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                    + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
                )
                if det > 0:
                    return None
                s = isqrt(-det)
                if s * s != -det:
                    return None
                r_num = c * s
                if r_num % den_r:
                    return None
                r = r_num // den_r
                if (S - r) % 2:
                    return None
                if S < r:
                    ta = False
    return True, ta


def _order_worker(args):
    n, require_ta = args
    out = []
    for d, p in join_order(n):
        params = ParameterSet(d, p)
        if validate(params) is not None:
            continue
        res = lambda_screen(d, p)
        if res is None:
            continue
        if require_ta and not res[1]:
            continue
        out.append((n, d, p, res[1]))
    return out


def _jobs_default(jobs):
    if jobs is None:
        jobs = int(os.environ.get("RBA6_JOBS", "1") or 1)
    return max(1, jobs)


def candidates(max_order: int, require_ta: bool = False, jobs: int | None = None, min_order: int = 6):
    """Integer-screened (n, delta, phi, is_ta) tuples, sorted by n then parameters."""
    jobs = _jobs_default(jobs)
    # largest orders first so workers stay busy
    orders = list(range(max(6, min_order), max_order + 1))[::-1]
    work = [(n, require_ta) for n in orders]
    if jobs == 1:
        chunks = map(_order_worker, work)
        results = [r for chunk in chunks for r in chunk]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = [r for chunk in ex.map(_order_worker, work, chunksize=1) for r in chunk]
    return sorted(results)


def enumerate_bruteforce(max_order: int, require_ta: bool = False) -> list[tuple]:
    """Reference enumerator without slot pruning: every canonical delta tuple,
    every phi in the box |phi_i| <= delta_i satisfying the linear relation,
    each passed to the same integer test.  Meant for small orders."""
    out = []
    for n in range(6, max_order + 1):
        for d4 in range(1, (n - 4) // 2 + 1):
            rest = n - 1 - 2 * d4
            for d1 in range(1, rest - 1):
                for d2 in range(1, rest - d1):
                    d3 = rest - d1 - d2
                    if d3 < 1:
                        continue
                    for p4 in range(-d4, d4 + 1):
                        for p1, p2 in product(range(-d1, d1 + 1), range(-d2, d2 + 1)):
                            p3 = -1 - 2 * p4 - p1 - p2
                            if abs(p3) > d3:
                                continue
                            # one representative per reordering of the symmetric slots
                            if not (d1, p1) >= (d2, p2) >= (d3, p3):
                                continue
                            d, p = (d1, d2, d3, d4), (p1, p2, p3, p4)
                            res = lambda_screen(d, p)
                            if res is None or (require_ta and not res[1]):
                                continue
                            if validate(ParameterSet(d, p)) is not None:
                                continue
                            out.append((n, d, p, res[1]))
    return sorted(out)


# -- records -------------------------------------------------------------------

@dataclass
class CensusRecord:
    params: ParameterSet
    table: CharacterTable
    integral: bool
    table_algebra: bool
    multiplicities_integral: bool
    primitive: bool
    family: FamilyLabel
    character_bounds: bool = True
    evenness: object = None
    center: object = None
    mphi1: object = None
    closed: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return int(self.table.n)

    def key(self):
        return (self.n, tuple(self.params.delta), tuple(self.params.phi))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "delta": [str(x) for x in self.params.delta],
            "phi": [str(x) for x in self.params.phi],
            "m_phi": str(self.table.m_phi),
            "m_chi": str(self.table.m_chi),
            "chi": [str(x) for x in self.table.chi],
            "integral": self.integral,
            "table_algebra": self.table_algebra,
            "multiplicities_integral": self.multiplicities_integral,
            "character_bounds": self.character_bounds,
            "primitive": self.primitive,
            "closed_subsets": [c.to_json() for c in self.closed],
            "family": self.family.to_json(),
            "evenness": self.evenness.to_json() if self.evenness is not None else None,
            "center_fusion": self.center.to_json() if self.center is not None else None,
            "mphi1": self.mphi1.to_json() if self.mphi1 is not None else None,
        }

    def comment(self) -> str:
        parts = [self.family.text if self.family.tag not in ("other", "primitive") else ""]
        parts.append("TA" if self.table_algebra else "Not TA")
        if self.primitive:
            parts.append("primitive")
        return ", ".join(p for p in parts if p)


def build_record(params: ParameterSet, verify: bool = True) -> CensusRecord:
    """Rebuild a parameter set from scratch with surd arithmetic and classify it."""
    params = canonicalize(params)
    basis = construct(params, check=verify)
    tensor = lambda_tensor(basis).relabel(basis.perm)
    table = character_table(params)
    if verify:
        if not verify_transition(basis.transition, basis.table).ok:
            raise AssertionError(f"transition check failed for {params}")
        if not tensor.is_standard:
            raise AssertionError(f"non-standard tensor for {params}")
    closed = closed_subsets(tensor)
    primitive = all(c.is_trivial for c in closed)
    ta = tensor.is_table_algebra
    rec = CensusRecord(
        params=params,
        table=table,
        integral=tensor.is_integral,
        table_algebra=ta,
        multiplicities_integral=table.m_phi.denominator == 1 and table.m_chi.denominator == 1,
        primitive=primitive,
        family=match_family(params, tensor, closed),
        character_bounds=tensor.satisfies_character_bounds,
        evenness=evenness_filter(tensor) if ta and tensor.is_integral else None,
        center=center_profile(params),
        mphi1=classify_mphi1(params, table, tensor) if table.m_phi == 1 else None,
        closed=closed,
    )
    return rec


def _record_worker(item):
    n, d, p, _ = item
    rec = build_record(ParameterSet(d, p))
    if not rec.integral:
        raise AssertionError(f"screen accepted a non-integral set {d};{p}")
    return rec


def enumerate_census(max_order: int, require_ta: bool = False, jobs: int | None = None,
                     verify: bool = True, min_order: int = 6) -> list[CensusRecord]:
    """One record per equivalence class, sorted by order then canonical parameters."""
    jobs = _jobs_default(jobs)
    cands = candidates(max_order, require_ta, jobs, min_order)
    log.info("screen kept %d parameter sets up to order %d", len(cands), max_order)
    if not verify:
        out = []
        for n, d, p, ta in cands:
            params = ParameterSet(d, p)
            table = character_table(params)
            out.append(CensusRecord(params, table, True, ta,
                                    table.m_phi.denominator == 1 and table.m_chi.denominator == 1,
                                    False, match_family(params)))
        return out
    if jobs == 1:
        return list(map(_record_worker, cands))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_record_worker, cands, chunksize=8))


# -- reference census ----------------------------------------------------------

@lru_cache(maxsize=1)
def _reference_doc():
    text = resources.files("rba6").joinpath("data/reference_census.json").read_text(encoding="utf-8")
    return json.loads(text)


def reference_rows(corrected: bool = True) -> list[dict]:
    """Transcribed census rows; with ``corrected`` the documented errata are applied."""
    rows = []
    for r in _reference_doc()["rows"]:
        r = dict(r)
        if corrected and "erratum" in r:
            r.update({k: v for k, v in r["erratum"].items() if k != "reason"})
        rows.append(r)
    return rows


def reference_key(row) -> tuple:
    params = canonicalize(ParameterSet(row["delta"], row["phi"]))
    return (int(row["n"]), tuple(params.delta), tuple(params.phi))


def reference_view(records: list[CensusRecord]) -> list[CensusRecord]:
    """Records as the published census lists them: circle products E∘K
    appear only up to the listing bound."""
    bound = _reference_doc()["wreath_listing_bound"]
    return [r for r in records if not (r.family.tag == "E∘K-wreath" and r.n > bound)]


# -- output --------------------------------------------------------------------

def _fmt_vec(xs):
    return "(" + ",".join(str(x) for x in xs) + ")"


def format_census(records: list[CensusRecord], fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps({"schema": 1, "count": len(records), "records": [r.to_json() for r in records]},
                          indent=1, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "delta", "phi", "m_phi", "m_chi", "table_algebra", "primitive", "family", "label"])
        for r in records:
            w.writerow([r.n, _fmt_vec(r.params.delta), _fmt_vec(r.params.phi), r.table.m_phi, r.table.m_chi,
                        int(r.table_algebra), int(r.primitive), r.family.tag, r.family.text])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| n | [δ, φ] | (m_φ, m_χ) | comments |", "|---|---|---|---|"]
        for r in records:
            lines.append(
                f"| {r.n} | [{_fmt_vec(r.params.delta)},{_fmt_vec(r.params.phi)}] "
                f"| ({r.table.m_phi},{r.table.m_chi}) | {r.comment()} |"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
