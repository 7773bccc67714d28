"""Bilinear three-term recurrences compiled from the octahedral relation.

derive_recurrence projects the six octahedron points around a fixed
degree-(-2) base through a lattice quotient map; the projected indices form
the three offset pairs of T(l+p1)T(l+q1) - T(l+p2)T(l+q2) + T(l+p3)T(l+q3)=0.
generate runs such a recurrence forward over exact big integers, falling
back to exact rationals when a division fails to be integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .lattice import LatticeError, QuotientMap, SublatticeBasis, quotient_map

Pair = tuple[int, int]
SIGNS = (1, -1, 1)

# base point and the six octahedron shifts, in pairing order
# (alpha beta | gamma delta), (alpha gamma | beta delta), (alpha delta | beta gamma)
BASE_POINT = (0, 0, -1, -1)
PAIRINGS = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))


class UnsolvableError(LatticeError):
    """The top offset appears in more than one pair; cannot iterate."""

    def __init__(self, pairs: tuple[Pair, Pair, Pair], colliding: list[int]):
        self.pairs = pairs
        self.colliding = colliding
        super().__init__(
            f"degenerate recurrence: max offset shared by pairs {colliding} "
            f"of {pairs}")


@dataclass(frozen=True)
class BilinearRecurrence:
    """T(l+p1)T(l+q1) - T(l+p2)T(l+q2) + T(l+p3)T(l+q3) = 0 for all l."""

    pairs: tuple[Pair, Pair, Pair]

    def __post_init__(self) -> None:
        if any(p < q for p, q in self.pairs):
            raise ValueError("each pair must be ordered p >= q")
        offsets = [x for pair in self.pairs for x in pair]
        top = max(offsets)
        owners = [i for i, (p, q) in enumerate(self.pairs) if top in (p, q)]
        if len(owners) != 1:
            raise UnsolvableError(self.pairs, owners)

    @property
    def window(self) -> int:
        offsets = [x for pair in self.pairs for x in pair]
        return max(offsets) - min(offsets)

    def to_json_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs],
                "signs": list(SIGNS),
                "window": self.window}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BilinearRecurrence":
        pairs = tuple(tuple(int(x) for x in p) for p in obj["pairs"])
        if len(pairs) != 3:
            raise ValueError("need exactly three pairs")
        if "signs" in obj and tuple(obj["signs"]) != SIGNS:
            raise ValueError("signs must be (1, -1, 1)")
        return cls(pairs)  # type: ignore[arg-type]


def canonicalize_pairs(raw: Sequence[Sequence[int]]) -> tuple[Pair, Pair, Pair]:
    """Canonical form of an offset-pair triple.

    Freedoms used: ordering inside a pair, swapping the two plus-sign pairs,
    reflection l -> -l, and translation.  The translation is chosen so the
    common pair-sum is zero when it is even (centered form, as the printed
    Somos relations) and so the minimum offset is zero otherwise.
    """
    def orient(pairs):
        pairs = [tuple(sorted(p, reverse=True)) for p in pairs]
        plus = sorted([pairs[0], pairs[2]])
        return (plus[0], pairs[1], plus[1])

    def translate(pairs):
        total = pairs[0][0] + pairs[0][1]  # common to all three pairs
        if total % 2 == 0:
            shift = -total // 2
        else:
            shift = -min(x for pair in pairs for x in pair)
        return tuple((p + shift, q + shift) for p, q in pairs)

    reflected = [(-q, -p) for p, q in raw]
    candidates = [translate(orient(raw)), translate(orient(reflected))]
    return min(candidates)


@dataclass(frozen=True)
class DerivedRecurrence:
    """Recurrence plus the lattice bookkeeping that produced it."""

    recurrence: BilinearRecurrence
    qmap: QuotientMap
    base: tuple[int, ...]
    # six octahedron points with their projected indices, in pairing order
    points: tuple[tuple[tuple[int, ...], int], ...]


def derive_recurrence(basis: SublatticeBasis) -> DerivedRecurrence:
    """Compile the octahedral relation through the quotient of a basis."""
    qmap = quotient_map(basis)
    raw_pairs = []
    points = []
    for pairing in PAIRINGS:
        indices = []
        for alpha, beta in pairing:
            n = list(BASE_POINT)
            n[alpha - 1] += 1
            n[beta - 1] += 1
            idx = qmap(tuple(n))
            points.append((tuple(n), idx))
            indices.append(idx)
        raw_pairs.append(tuple(indices))
    rec = BilinearRecurrence(canonicalize_pairs(raw_pairs))
    return DerivedRecurrence(recurrence=rec, qmap=qmap, base=BASE_POINT,
                             points=tuple(points))


@dataclass
class SequenceRun:
    """Generated terms plus how the generation ended.

    status is "ok", "degenerate" (division by zero at status_index) or
    "non-integral" (first fractional term at status_index; the run then
    continues over exact rationals).
    """

    terms: list[int | Fraction]
    status: str = "ok"
    status_index: int | None = None
    seed_window: list[int | Fraction] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "terms": [_term_str(t) for t in self.terms],
            "status": self.status,
            "status_index": self.status_index,
            "seed_window": [_term_str(t) for t in self.seed_window],
        }


def _term_str(t: int | Fraction) -> str:
    if isinstance(t, Fraction) and t.denominator != 1:
        return f"{t.numerator}/{t.denominator}"
    return str(int(t))


def generate(rec: BilinearRecurrence, count: int,
             init: Sequence[int] | None = None) -> SequenceRun:
    """Iterate the recurrence to `count` terms from an initial window.

    The default window is all ones.  Every step solves for the unique top
    term exactly; divisions are checked and never rounded.
    """
    window = rec.window
    if count < window:
        raise ValueError(f"count must be >= window size {window}")
    if init is None:
        init = [1] * window
    if len(init) != window:
        raise ValueError(f"initial window must have length {window}")

    # shift offsets so the minimum is 0; the top term is then at l + top
    low = min(x for pair in rec.pairs for x in pair)
    pairs = [(p - low, q - low) for p, q in rec.pairs]
    top = max(x for pair in pairs for x in pair)
    owner = next(i for i, (p, q) in enumerate(pairs) if top in (p, q))
    p_o, q_o = pairs[owner]
    partner = q_o if p_o == top else p_o

    terms: list[int | Fraction] = list(init)
    run = SequenceRun(terms=terms, seed_window=list(init))
    for j in range(window, count):
        l = j - top
        acc = Fraction(0)
        for i, (p, q) in enumerate(pairs):
            if i == owner:
                continue
            acc += SIGNS[i] * Fraction(terms[l + p]) * Fraction(terms[l + q])
        divisor = SIGNS[owner] * Fraction(terms[l + partner])
        if divisor == 0:
            run.status = "degenerate"
            run.status_index = j
            break
        value = -acc / divisor
        if value.denominator == 1:
            value = int(value)
        elif run.status == "ok":
            run.status = "non-integral"
            run.status_index = j
        terms.append(value)
    return run


# ---------------------------------------------------------------------------
# permutation action on tau tables
# ---------------------------------------------------------------------------

TauTable = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class PermutationAction:
    """Permutation of components {1..s}, stored as a 1-based image tuple."""

    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError(f"not a permutation of 1..s: {self.sigma}")

    def apply(self, n: tuple[int, ...]) -> tuple[int, ...]:
        """Coordinate permutation: entry at alpha moves to slot sigma(alpha)."""
        out = [0] * len(n)
        for alpha, target in enumerate(self.sigma):
            out[target - 1] = n[alpha]
        return tuple(out)

    def inverse(self) -> "PermutationAction":
        inv = [0] * len(self.sigma)
        for alpha, target in enumerate(self.sigma):
            inv[target - 1] = alpha + 1
        return PermutationAction(tuple(inv))


def q_sigma(sigma: PermutationAction, n: Sequence[int]) -> int:
    """Quadratic form sum of n_alpha * n_beta over inversion pairs of sigma."""
    total = 0
    s = len(sigma.sigma)
    for alpha in range(s):
        for beta in range(alpha + 1, s):
            if sigma.sigma[alpha] > sigma.sigma[beta]:
                total += n[alpha] * n[beta]
    return total


def act_permutation(sigma: PermutationAction, table: TauTable) -> TauTable:
    """New table tau'(n) = (-1)^{q_sigma(n)} tau(sigma(n)).

    Entries whose permuted point is missing from the input table are
    dropped; on symmetric domains (all |n_c| <= bound) nothing is lost.
    """
    out: TauTable = {}
    for n in table:
        image = sigma.apply(n)
        if image in table:
            sign = -1 if q_sigma(sigma, n) % 2 else 1
            out[n] = sign * table[image]
    return out


def table_octahedron_residual(table: TauTable,
                              base: tuple[int, ...]) -> Fraction:
    """Three-term octahedral residual read off a tau table at a base point."""
    def at(shift_a: int, shift_b: int) -> Fraction:
        n = list(base)
        n[shift_a - 1] += 1
        n[shift_b - 1] += 1
        return table[tuple(n)]

    return (at(1, 2) * at(3, 4) - at(1, 3) * at(2, 4) + at(1, 4) * at(2, 3))
