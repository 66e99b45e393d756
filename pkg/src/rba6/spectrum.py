"""Parameter sets, admissibility and character tables.

Indices 1, 2, 3 are the symmetric basis elements and 4, 5 the non-symmetric
pair (b5 = b4*), so a parameter set only carries four degrees and four
phi-values; entries 0 and 5 are implied.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["ParameterSet", "CharacterTable", "validate", "character_table", "parse_params"]


def _frac_str(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class ParameterSet:
    delta: tuple[Fraction, Fraction, Fraction, Fraction]
    phi: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.delta) != 4 or len(self.phi) != 4:
            raise ValueError("a parameter set has four degrees and four phi-values")
        object.__setattr__(self, "delta", tuple(Fraction(x) for x in self.delta))
        object.__setattr__(self, "phi", tuple(Fraction(x) for x in self.phi))

    @property
    def deltas(self) -> tuple[Fraction, ...]:
        """Degrees of b0..b5."""
        d = self.delta
        return (Fraction(1), d[0], d[1], d[2], d[3], d[3])

    @property
    def phis(self) -> tuple[Fraction, ...]:
        """phi-values at b0..b5."""
        p = self.phi
        return (Fraction(1), p[0], p[1], p[2], p[3], p[3])

    @property
    def order(self) -> Fraction:
        return sum(self.deltas)

    def is_integral_shape(self) -> bool:
        """All eight entries integers with |phi_i| <= delta_i."""
        return all(x.denominator == 1 for x in self.delta + self.phi) and all(
            abs(p) <= d for d, p in zip(self.delta, self.phi)
        )

    def to_json(self) -> dict:
        return {"delta": [_frac_str(x) for x in self.delta], "phi": [_frac_str(x) for x in self.phi]}

    @classmethod
    def from_json(cls, obj) -> ParameterSet:
        return cls(tuple(Fraction(str(x)) for x in obj["delta"]), tuple(Fraction(str(x)) for x in obj["phi"]))

    def __str__(self):
        d = ",".join(_frac_str(x) for x in self.delta)
        p = ",".join(_frac_str(x) for x in self.phi)
        return f"{d};{p}"


def parse_params(text: str) -> ParameterSet:
    """Parse ``"d1,d2,d3,d4;p1,p2,p3,p4"``; errors name the offending column."""
    halves = text.split(";")
    if len(halves) != 2:
        raise ValueError(f"cannot parse parameter set {text!r}: expected 'd1,d2,d3,d4;p1,p2,p3,p4'")
    values = []
    offset = 0
    for half in halves:
        row = []
        for tok in half.split(","):
            try:
                row.append(Fraction(tok.strip()))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad number {tok.strip()!r} at column {offset + 1} of {text!r}") from None
            offset += len(tok) + 1
        if len(row) != 4:
            raise ValueError(f"expected 4 entries before column {offset} of {text!r}, got {len(row)}")
        values.append(tuple(row))
    return ParameterSet(values[0], values[1])


@dataclass(frozen=True)
class CharacterTable:
    params: ParameterSet
    n: Fraction
    m_phi: Fraction
    m_chi: Fraction
    chi: tuple[Fraction, ...]  # chi_0..chi_5

    @property
    def delta_row(self):
        return self.params.deltas

    @property
    def phi_row(self):
        return self.params.phis

    @property
    def multiplicities(self) -> tuple[Fraction, Fraction, Fraction]:
        return (Fraction(1), self.m_phi, self.m_chi)

    def rows(self):
        return [self.delta_row, self.phi_row, self.chi]

    def to_json(self) -> dict:
        return {
            "n": _frac_str(self.n),
            "multiplicities": [_frac_str(x) for x in self.multiplicities],
            "delta": [_frac_str(x) for x in self.delta_row],
            "phi": [_frac_str(x) for x in self.phi_row],
            "chi": [_frac_str(x) for x in self.chi],
        }


def validate(params: ParameterSet) -> str | None:
    """Return ``None`` when the set is admissible, else the reasons it is not."""
    d, p = params.delta, params.phi
    if any(x <= 0 for x in d):
        return "degrees must be positive"
    reasons = []
    s = 1 + p[0] + p[1] + p[2] + 2 * p[3]
    if s != 0:
        reasons.append(f"linear relation 1 + phi1 + phi2 + phi3 + 2*phi4 = {s}, not 0")
    r4 = p[3] / d[3]
    if all(p[i] / d[i] == r4 for i in range(3)):
        reasons.append("commutative degeneration: phi_i/delta_i equals phi4/delta4 for all symmetric i")
    return "; ".join(reasons) or None


def character_table(params: ParameterSet) -> CharacterTable:
    reason = validate(params)
    if reason is not None:
        raise ValueError(f"inadmissible parameter set {params}: {reason}")
    D, P = params.deltas, params.phis
    n = sum(D)
    m_phi = n / sum(p * p / d for d, p in zip(D, P))
    m_chi = (n - 1 - m_phi) / 2
    assert m_chi > 0, "m_chi must be positive for an admissible set"
    chi = (Fraction(2),) + tuple((-D[i] - m_phi * P[i]) / m_chi for i in range(1, 6))
    return CharacterTable(params, n, m_phi, m_chi, chi)
