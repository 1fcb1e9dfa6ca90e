"""Parabolic degree and the degree-zero tests for connections.

The degree on the root stack is taken to be the parabolic degree of the
corresponding parabolic bundle; no intersection theory is involved.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDatum, InvalidDecomposition
from .parabolic import ParabolicLocalDatum


class HypothesisWarning(UserWarning):
    """The curve/point-count hypothesis of the existence criterion is not confirmed."""


@dataclass(frozen=True)
class ParabolicBundleGlobal:
    """A bundle of rank ``n`` with weighted flags at finitely many points.

    Local weights are stored per point in the bundle's own frame order (the
    datum records how it sorts them).  ``line_degrees`` is set when the
    bundle is given as an explicit direct sum of line bundles.
    """

    rank: int
    degree: int
    points: tuple = ()  # ((label, ParabolicLocalDatum), ...)
    line_degrees: tuple | None = None
    genus: int | None = None

    def __post_init__(self):
        pts = tuple((str(lbl), d) for lbl, d in (self.points.items() if isinstance(self.points, dict) else self.points))
        object.__setattr__(self, "points", pts)
        if self.rank < 1:
            raise InvalidDatum("rank must be positive")
        labels = [lbl for lbl, _ in pts]
        if len(set(labels)) != len(labels):
            raise InvalidDatum("duplicate point labels")
        for lbl, d in pts:
            if d.n != self.rank:
                raise InvalidDatum(f"point {lbl}: {d.n} weights for a rank {self.rank} bundle")
        if self.line_degrees is not None:
            ld = tuple(int(x) for x in self.line_degrees)
            object.__setattr__(self, "line_degrees", ld)
            if len(ld) != self.rank or sum(ld) != self.degree:
                raise InvalidDatum("line summand degrees must have one entry per rank and sum to the degree")

    @classmethod
    def from_weights(cls, rank, degree, weights, line_degrees=None, genus=None) -> "ParabolicBundleGlobal":
        """Build from rational weights ``{label: [w_1..w_n]}`` in [0, 1), normalizing to a common r."""
        fr = {lbl: [Fraction(w) for w in ws] for lbl, ws in weights.items()}
        r = math.lcm(1, *(w.denominator for ws in fr.values() for w in ws))
        pts = []
        for lbl, ws in fr.items():
            if any(not 0 <= w < 1 for w in ws):
                raise InvalidDatum(f"point {lbl}: weights must lie in [0, 1)")
            pts.append((lbl, ParabolicLocalDatum.from_weights([int(w * r) for w in ws], r)))
        return cls(rank, degree, tuple(pts), line_degrees, genus)

    def local_weights(self, label) -> tuple:
        """Rational weights at a point in the bundle's frame order."""
        d = dict(self.points)[label]
        return tuple(Fraction(p, d.r) for p in d.original_weights)


def par_deg(bundle: ParabolicBundleGlobal) -> Fraction:
    """Underlying degree plus each weight times the dimension of its graded piece."""
    total = Fraction(bundle.degree)
    for _, d in bundle.points:
        total += sum((Fraction(p, d.r) for p in d.weights), Fraction(0))
    return total


deg_root_stack = par_deg


def line_connection_exists(bundle: ParabolicBundleGlobal) -> bool:
    if bundle.rank != 1:
        raise InvalidDatum(f"line bundle criterion needs rank 1, got rank {bundle.rank}")
    return par_deg(bundle) == 0


def determinant(bundle: ParabolicBundleGlobal) -> ParabolicBundleGlobal:
    """Rank-one bundle with weight the sum of the local weights (integer parts moved into the degree)."""
    deg = bundle.degree
    pts = {}
    for lbl, _ in bundle.points:
        w = sum(bundle.local_weights(lbl), Fraction(0))
        deg += math.floor(w)
        pts[lbl] = [w - math.floor(w)]
    return ParabolicBundleGlobal.from_weights(1, deg, pts, genus=bundle.genus)


@dataclass(frozen=True)
class LeviDecomposition:
    """Block splitting of a bundle: ``blocks`` partition the frame indices, each with its degree."""

    blocks: tuple
    degrees: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(int(i) for i in b) for b in self.blocks))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.blocks) != len(self.degrees):
            raise InvalidDecomposition("one degree is needed per block")
        if any(not b for b in self.blocks):
            raise InvalidDecomposition("empty block")

    def validate(self, bundle: ParabolicBundleGlobal):
        idx = sorted(i for b in self.blocks for i in b)
        if idx != list(range(bundle.rank)):
            raise InvalidDecomposition(f"blocks {self.describe()} do not partition 1..{bundle.rank}")
        if sum(self.degrees) != bundle.degree:
            raise InvalidDecomposition(
                f"block degrees {list(self.degrees)} do not sum to the bundle degree {bundle.degree}"
            )

    def summand(self, bundle: ParabolicBundleGlobal, b: int) -> ParabolicBundleGlobal:
        """The block ``b`` summand with the restricted local weights."""
        block = self.blocks[b]
        weights = {lbl: [bundle.local_weights(lbl)[i] for i in block] for lbl, _ in bundle.points}
        return ParabolicBundleGlobal.from_weights(len(block), self.degrees[b], weights, genus=bundle.genus)

    def describe(self) -> str:
        return "[" + ", ".join("{" + ",".join(str(i + 1) for i in b) + "}" for b in self.blocks) + "]"


def character_line_degree(bundle: ParabolicBundleGlobal, decomp: LeviDecomposition, chi) -> Fraction:
    """Degree of the line bundle for the character ``prod det(block_b)**chi_b``."""
    decomp.validate(bundle)
    chi = tuple(int(c) for c in chi)
    if len(chi) != len(decomp.blocks):
        raise InvalidDecomposition("character needs one exponent per block")
    return sum(
        (c * par_deg(determinant(decomp.summand(bundle, b))) for b, c in enumerate(chi) if c),
        Fraction(0),
    )


def generating_characters(decomp: LeviDecomposition) -> list:
    k = len(decomp.blocks)
    return [tuple(int(i == b) for i in range(k)) for b in range(k)]


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def split_decompositions(bundle: ParabolicBundleGlobal) -> list:
    """All block decompositions of a bundle given as a sum of line bundles (rank <= 4)."""
    if bundle.line_degrees is None:
        return []
    if bundle.rank > 4:
        raise InvalidDatum("split decomposition enumeration is limited to rank <= 4")
    out = []
    for part in set_partitions(range(bundle.rank)):
        blocks = sorted((sorted(b) for b in part), key=lambda b: (len(b), b))
        blocks = sorted(blocks, key=lambda b: b[0])
        degs = [sum(bundle.line_degrees[i] for i in b) for b in blocks]
        out.append(LeviDecomposition(tuple(tuple(b) for b in blocks), tuple(degs), "split"))
    out.sort(key=lambda d: (len(d.blocks), d.blocks))
    return out


@dataclass(frozen=True)
class CriterionLine:
    decomposition: LeviDecomposition
    character: tuple
    degree: Fraction

    @property
    def ok(self) -> bool:
        return self.degree == 0


@dataclass(frozen=True)
class CriterionReport:
    lines: tuple
    warnings: tuple = ()

    @property
    def violations(self) -> tuple:
        return tuple(l for l in self.lines if not l.ok)

    @property
    def verdict(self) -> bool:
        """No violation among the decompositions examined (a necessary condition only)."""
        return not self.violations


def weil_atiyah_check(bundle: ParabolicBundleGlobal, decomps=(), characters=None, enumerate_split=True) -> CriterionReport:
    """Evaluate character degrees over the supplied (and enumerated split) decompositions.

    ``characters`` optionally maps a decomposition's position in ``decomps``
    to a list of characters; by default each block determinant is used.
    """
    notes = []
    if bundle.genus is None:
        notes.append("genus not supplied: hypothesis (g >= 1 or more than one point) unchecked")
    elif bundle.genus == 0 and len(bundle.points) <= 1:
        notes.append("genus 0 with at most one point: the criterion's hypothesis fails")
    for msg in notes:
        warnings.warn(msg, HypothesisWarning, stacklevel=2)
    characters = characters or {}
    todo = []
    for k, d in enumerate(decomps):
        d.validate(bundle)
        todo.append((d, characters.get(k)))
    whole = LeviDecomposition((tuple(range(bundle.rank)),), (bundle.degree,), "whole")
    seen = {d.blocks for d, _ in todo}
    extra = [whole] + (split_decompositions(bundle) if enumerate_split else [])
    for d in extra:
        if d.blocks not in seen:
            seen.add(d.blocks)
            todo.append((d, None))
    lines = []
    for d, chis in todo:
        for chi in chis or generating_characters(d):
            lines.append(CriterionLine(d, tuple(chi), character_line_degree(bundle, d, chi)))
    return CriterionReport(tuple(lines), tuple(notes))
