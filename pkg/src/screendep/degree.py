"""Finite-support degree distributions with exact rational weights.

A distribution assigns positive rational weights to finitely many integer
degrees >= 2 and is the single source of truth for generating-function and
moment computations, so weights are kept exact end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

WeightLike = Union[int, str, Fraction, float]

FLOAT_WEIGHT_TOL = 1e-12


def _to_fraction(w: WeightLike) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, int):
        return Fraction(w)
    if isinstance(w, str):
        return Fraction(w)
    if isinstance(w, float):
        approx = Fraction(w).limit_denominator(10 ** 12)
        if abs(float(approx) - w) > FLOAT_WEIGHT_TOL:
            raise ValueError(
                f"float weight {w!r} has no rational representation within "
                f"{FLOAT_WEIGHT_TOL}"
            )
        return approx
    raise TypeError(f"unsupported weight type {type(w).__name__}")


@dataclass(frozen=True)
class DegreeDistribution:
    """Probability distribution over vertex degrees, finite support on {2, 3, ...}.

    atoms are (degree, weight) pairs sorted by degree with weights > 0
    summing exactly to 1.  Use from_pairs to construct; raw weights are
    normalized there.
    """

    atoms: tuple[tuple[int, Fraction], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("degree distribution needs at least one atom")
        degrees = [d for d, _ in self.atoms]
        if any(not isinstance(d, int) or d < 2 for d in degrees):
            raise ValueError(f"degrees must be integers >= 2, got {degrees}")
        if sorted(set(degrees)) != degrees:
            raise ValueError(f"degrees must be strictly increasing, got {degrees}")
        if any(not isinstance(w, Fraction) or w <= 0 for _, w in self.atoms):
            raise ValueError("weights must be positive Fractions")
        total = sum(w for _, w in self.atoms)
        if total != 1:
            raise ValueError(f"weights must sum to 1 exactly, got {total}")

    @classmethod
    def from_pairs(
        cls,
        pairs: Union[Mapping[int, WeightLike], Iterable[tuple[int, WeightLike]]],
        name: str | None = None,
    ) -> "DegreeDistribution":
        """Build from (degree, weight) pairs or a mapping, normalizing weights.

        Weights may be ints, Fractions, strings like "1/2", or floats; floats
        are rationalized with tolerance 1e-12 before the exact normalization.
        """
        if isinstance(pairs, Mapping):
            items = list(pairs.items())
        else:
            items = list(pairs)
        if not items:
            raise ValueError("degree distribution needs at least one atom")
        merged: dict[int, Fraction] = {}
        for d, w in items:
            d = int(d)
            merged[d] = merged.get(d, Fraction(0)) + _to_fraction(w)
        total = sum(merged.values())
        if total <= 0:
            raise ValueError("total weight must be positive")
        atoms = tuple(
            (d, merged[d] / total) for d in sorted(merged) if merged[d] != 0
        )
        return cls(atoms=atoms, name=name)

    # -- basic accessors ------------------------------------------------

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.atoms)

    @property
    def max_degree(self) -> int:
        return self.atoms[-1][0]

    def weight(self, d: int) -> Fraction:
        for deg, w in self.atoms:
            if deg == d:
                return w
        return Fraction(0)

    def is_point_mass(self) -> bool:
        return len(self.atoms) == 1

    # -- moments and generating function ---------------------------------

    def mean(self) -> Fraction:
        return sum(Fraction(d) * w for d, w in self.atoms)

    def moment(self, r: int) -> Fraction:
        return sum(Fraction(d ** r) * w for d, w in self.atoms)

    def gen_fun(self, s: float) -> float:
        """Probability generating function G(s) = sum_d w_d s^d for s in [0, 1]."""
        if not 0.0 <= s <= 1.0:
            raise ValueError(f"gen_fun needs s in [0, 1], got {s}")
        return float(self.gen_fun_exact(Fraction(s)))

    def gen_fun_exact(self, s: Fraction) -> Fraction:
        return sum(w * s ** d for d, w in self.atoms)

    # -- labels and serialization ----------------------------------------

    def label(self) -> str:
        if self.name:
            return self.name
        return ",".join(f"{d}:{w}" for d, w in self.atoms)

    def to_json_dict(self) -> dict:
        out = {"atoms": [[d, str(w)] for d, w in self.atoms]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "DegreeDistribution":
        return cls.from_pairs(
            [(int(d), w) for d, w in data["atoms"]], name=data.get("name")
        )


def make_regular(d: int) -> DegreeDistribution:
    """Point mass at degree d (the degree law of the d-regular tree)."""
    return DegreeDistribution.from_pairs({d: 1}, name=f"regular({d})")


def parse_atoms(text: str, name: str | None = None) -> DegreeDistribution:
    """Parse 'k:weight[,k:weight...]' with exact rational weights, e.g. '2:1/2,3:1/2'."""
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            deg_s, weight_s = chunk.split(":")
            pairs.append((int(deg_s), Fraction(weight_s)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad atom {chunk!r}: expected 'degree:weight'") from exc
    if not pairs:
        raise ValueError(f"no atoms found in {text!r}")
    return DegreeDistribution.from_pairs(pairs, name=name)
