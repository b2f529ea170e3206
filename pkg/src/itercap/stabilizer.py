"""Binary-symplectic stabilizer machinery for the [[5,1,3]] code.

An n-qubit Pauli operator (phases dropped throughout; they cancel under
channel conjugation) is a pair of n-bit masks (xbits, zbits): qubit q carries
X iff bit q of xbits is set, Z iff bit q of zbits is set, Y iff both. Two
Paulis anticommute iff the symplectic product

    parity( popcount((x1 & z2) ^ (z1 & x2)) )

is 1. The effective logical channel of the code under i.i.d. single-qubit
Pauli noise is computed by exact enumeration of all 4^n error strings;
concatenation applies the single-level map recursively, which is exact
because the inner blocks see i.i.d. noise on disjoint qubits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DimensionMismatchError, NotInNormalizerError
from .pauli import PauliChannel

__all__ = [
    "PauliString",
    "StabilizerCode",
    "LogicalChannelResult",
    "five_qubit_code",
    "syndrome",
    "logical_class",
    "logical_channel",
    "concatenated_logical_channel",
]

# digit encoding used by the enumeration: 0=I, 1=X, 2=Y, 3=Z
_X_BIT = (0, 1, 1, 0)
_Z_BIT = (0, 0, 1, 1)
_CLASS_NAMES = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class PauliString:
    """Phase-free n-qubit Pauli operator in binary-symplectic form."""

    n: int
    xbits: int
    zbits: int

    def __post_init__(self) -> None:
        mask = (1 << self.n) - 1
        if self.xbits & ~mask or self.zbits & ~mask:
            raise ValueError(f"bit masks exceed {self.n} qubits")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        x = z = 0
        for q, ch in enumerate(label.upper()):
            if ch not in "IXYZ":
                raise ValueError(f"invalid Pauli letter {ch!r}")
            if ch in "XY":
                x |= 1 << q
            if ch in "ZY":
                z |= 1 << q
        return cls(n=len(label), xbits=x, zbits=z)

    def to_label(self) -> str:
        letters = []
        for q in range(self.n):
            xb, zb = (self.xbits >> q) & 1, (self.zbits >> q) & 1
            letters.append("IXZY"[xb + 2 * zb])
        return "".join(letters)

    def weight(self) -> int:
        return (self.xbits | self.zbits).bit_count()

    def anticommutes_with(self, other: "PauliString") -> int:
        if self.n != other.n:
            raise DimensionMismatchError(f"qubit counts {self.n} vs {other.n}")
        return ((self.xbits & other.zbits) ^ (self.zbits & other.xbits)).bit_count() & 1

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise DimensionMismatchError(f"qubit counts {self.n} vs {other.n}")
        return PauliString(self.n, self.xbits ^ other.xbits, self.zbits ^ other.zbits)


@dataclass(frozen=True)
class StabilizerCode:
    """[[n, 1]] stabilizer code with a hard-decision syndrome-table decoder."""

    n: int
    k: int
    generators: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString
    syndrome_table: dict

    def __post_init__(self) -> None:
        gens = self.generators
        if len(gens) != self.n - self.k:
            raise ValueError(f"expected {self.n - self.k} generators, got {len(gens)}")
        for a, b in itertools.combinations(gens, 2):
            if a.anticommutes_with(b):
                raise ValueError(f"generators {a.to_label()} and {b.to_label()} anticommute")
        if self.logical_x.anticommutes_with(self.logical_z) != 1:
            raise ValueError("logical X and Z must anticommute")
        for g in gens:
            if self.logical_x.anticommutes_with(g) or self.logical_z.anticommutes_with(g):
                raise ValueError("logical operators must commute with the stabilizer")
        if set(self.syndrome_table) != set(range(1 << len(gens))):
            raise ValueError("syndrome table must cover every syndrome")
        for s, corr in self.syndrome_table.items():
            if syndrome(self, corr) != s:
                raise ValueError(f"correction for syndrome {s:0{len(gens)}b} has the wrong syndrome")


def syndrome(code: StabilizerCode, e: PauliString) -> int:
    """Syndrome bits: bit i is 1 iff e anticommutes with generator i."""
    if e.n != code.n:
        raise DimensionMismatchError(f"error acts on {e.n} qubits, code has {code.n}")
    s = 0
    for i, g in enumerate(code.generators):
        s |= e.anticommutes_with(g) << i
    return s


def logical_class(code: StabilizerCode, r: PauliString) -> str:
    """Logical action of a normalizer element: one of "I", "X", "Y", "Z".

    Classified by anticommutation with (logical Z, logical X): a residual
    acting as logical X anticommutes with logical Z only, and so on.
    """
    if syndrome(code, r) != 0:
        raise NotInNormalizerError(f"{r.to_label()} anticommutes with the stabilizer")
    anti_z = r.anticommutes_with(code.logical_z)
    anti_x = r.anticommutes_with(code.logical_x)
    return "IXZY"[anti_z + 2 * anti_x]


def _minimal_weight_table(n: int, gens: list[PauliString]) -> dict:
    """Map each syndrome to its minimal-weight coset leader (ties broken
    lexicographically on (xbits, zbits)); requires every syndrome reachable."""

    def synd(e: PauliString) -> int:
        return sum(e.anticommutes_with(g) << i for i, g in enumerate(gens))

    table: dict[int, PauliString] = {}
    strings = [PauliString(n, 0, 0)]
    strings += [
        PauliString(n, _X_BIT[d] << q, _Z_BIT[d] << q)
        for q in range(n) for d in (1, 2, 3)
    ]
    # enumerate by weight, then lexicographically, so the first hit is canonical
    for weight in range(0, n + 1):
        if len(table) == 1 << len(gens):
            break
        for comb in itertools.combinations(range(n), weight):
            for digits in itertools.product((1, 2, 3), repeat=weight):
                x = z = 0
                for q, d in zip(comb, digits):
                    x |= _X_BIT[d] << q
                    z |= _Z_BIT[d] << q
                e = PauliString(n, x, z)
                table.setdefault(synd(e), e)
    return {s: table[s] for s in sorted(table)}


def five_qubit_code() -> StabilizerCode:
    """The perfect [[5,1,3]] code with generators XZZXI, IXZZX, XIXZZ, ZXIXZ.

    The identity and the 15 single-qubit Paulis hit all 16 syndromes exactly
    once, so the minimal-weight corrections are unique.
    """
    gens = tuple(PauliString.from_label(l) for l in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"))
    return StabilizerCode(
        n=5,
        k=1,
        generators=gens,
        logical_x=PauliString.from_label("XXXXX"),
        logical_z=PauliString.from_label("ZZZZZ"),
        syndrome_table=_minimal_weight_table(5, list(gens)),
    )


@dataclass(frozen=True)
class LogicalChannelResult:
    """Exact logical error distribution q and the per-class probability masses."""

    q: PauliChannel
    class_mass: dict


def logical_channel(code: StabilizerCode, p: PauliChannel) -> LogicalChannelResult:
    """Effective logical Pauli channel decode(correct(noise(encode))) under
    i.i.d. noise p on each physical qubit, by exact enumeration of all 4^n
    error strings. Per-class masses are accumulated with exact summation."""
    probs = p.as_tuple()
    masses: dict[str, list[float]] = {name: [] for name in _CLASS_NAMES}
    for digits in itertools.product(range(4), repeat=code.n):
        weight = 1.0
        x = z = 0
        for q, d in enumerate(digits):
            weight *= probs[d]
            x |= _X_BIT[d] << q
            z |= _Z_BIT[d] << q
        if weight == 0.0:
            continue
        e = PauliString(code.n, x, z)
        correction = code.syndrome_table[syndrome(code, e)]
        masses[logical_class(code, correction * e)].append(weight)
    class_mass = {name: math.fsum(vals) for name, vals in masses.items()}
    q = PauliChannel(class_mass["I"], class_mass["X"], class_mass["Y"], class_mass["Z"])
    return LogicalChannelResult(q=q, class_mass=class_mass)


def concatenated_logical_channel(code: StabilizerCode, p: PauliChannel,
                                 level: int) -> LogicalChannelResult:
    """Level-l logical channel by recursion q(l) = L(q(l-1)); exact under
    i.i.d. block noise since the inner blocks act on disjoint qubits."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    result = logical_channel(code, p)
    for _ in range(level - 1):
        result = logical_channel(code, result.q)
    return result
