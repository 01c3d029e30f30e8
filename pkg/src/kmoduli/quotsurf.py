"""Cyclic quotient del Pezzo surfaces and their deformation spaces.

Builds X_l = (P1 x P1)/Z_l and Y_l = P2/Z_l (and any other diagonal
cyclic action with isolated fixed points), locates the quotient
singularities by stabilizer analysis, and assembles the direct sum of
the local Q-Gorenstein deformation spaces together with the residual
2-torus weight matrix on it.

Chart conventions, fixed once per ambient so every torus character in
the package is comparable:

  * P1 x P1: the torus (t1, t2) acts by [z0:z1] -> [t1 z0 : z1] on the
    first factor and [w0:w1] -> [t2 w0 : w1] on the second. The chart
    coordinate at [0:1] on factor f carries character e_f, the one at
    [1:0] carries -e_f. The cyclic group acts with weight w_f on the
    first homogeneous coordinate of factor f.
  * P2: the torus acts by [z0:z1:z2] -> [t1 z0 : t2 z1 : z2], so the
    homogeneous coordinates carry characters (1,0), (0,1), (0,0) and
    the chart coordinate z_j/z_i at the fixed point e_i carries the
    difference. The cyclic group acts with weight w_j on z_j.

Every accepted action has isolated fixed points, which forces the full
group Z_l to stabilize each coordinate point and to act faithfully on
its chart, so each singular point is the full quotient 1/l(a,b) of its
chart weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .cqsing import (
    Character,
    CyclicQuotientSingularity,
    NonIsolatedError,
    NormalForm,
    UnknownDeformationError,
    classify,
    normalize,
    versal_weights,
)
from .torusgit import WeightSystem

P1XP1 = "P1xP1"
P2 = "P2"


def rational_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


@dataclass(frozen=True)
class CyclicAction:
    """A diagonal action of Z_l on P1 x P1 (one weight per factor, on the
    first homogeneous coordinate) or on P2 (one weight per coordinate)."""

    ambient: str
    order: int
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ambient not in (P1XP1, P2):
            raise ValueError(f"ambient must be {P1XP1!r} or {P2!r}: {self.ambient!r}")
        if self.order < 2:
            raise ValueError(f"group order must be at least 2, got {self.order}")
        expected = 2 if self.ambient == P1XP1 else 3
        if len(self.weights) != expected:
            raise ValueError(
                f"{self.ambient} takes {expected} weights, got {len(self.weights)}"
            )
        object.__setattr__(
            self, "weights", tuple(w % self.order for w in self.weights)
        )

    @classmethod
    def x_family(cls, l: int) -> "CyclicAction":
        """The X-family action on P1 x P1: ([z0:z1],[w0:w1]) -> ([zeta z0:z1],[zeta^(-1) w0:w1])."""
        if l < 2:
            raise ValueError(f"the X family needs l >= 2, got {l}")
        return cls(P1XP1, l, (1, -1))

    @classmethod
    def y_family(cls, l: int) -> "CyclicAction":
        """The Y-family action on P2: [z0:z1:z2] -> [zeta z0 : zeta^(-1) z1 : z2]."""
        if l < 3:
            raise ValueError(f"the Y family needs l >= 3, got {l}")
        if l % 2 == 0:
            raise NonIsolatedError(
                f"even order {l} is not admissible for the Y family: the order-2 "
                "subgroup acts trivially on the line z2 = 0, fixing it pointwise"
            )
        return cls(P2, l, (1, -1, 0))

    @property
    def is_x_preset(self) -> bool:
        return self.ambient == P1XP1 and self.weights == (1 % self.order, -1 % self.order)

    @property
    def is_y_preset(self) -> bool:
        return (
            self.ambient == P2
            and self.order % 2 == 1
            and self.weights == (1, self.order - 1, 0)
        )

    def to_json_dict(self) -> dict:
        return {
            "ambient": self.ambient,
            "order": self.order,
            "weights": list(self.weights),
        }


@dataclass(frozen=True)
class FixedPointRecord:
    """One fixed coordinate point and its local data.

    local_cyclic_weights are the Z_l chart weights (reduced mod the
    stabilizer order), local_torus_weights the characters of the
    residual 2-torus on the same two chart coordinates. The stored
    normal form is the canonical representative of its equivalence
    class (smaller q of the two chart orderings).
    """

    point_label: str
    stabilizer_order: int
    local_cyclic_weights: tuple[int, int]
    local_torus_weights: tuple[Character, Character]
    singularity: NormalForm

    def to_json_dict(self) -> dict:
        return {
            "point_label": self.point_label,
            "stabilizer_order": self.stabilizer_order,
            "local_cyclic_weights": list(self.local_cyclic_weights),
            "local_torus_weights": [list(c) for c in self.local_torus_weights],
            "singularity": self.singularity.to_json_dict(),
        }


@dataclass(frozen=True)
class SurfaceModel:
    """A quotient surface: singular locus, volume, and base topology.

    aut0_dim is the dimension of the connected automorphism group; it
    is known (= 2, the residual torus) for the two preset families and
    None (unsupported) for other actions. b2_base is the rank of the
    invariant part of H^2 of the ambient, which the homotopically
    trivial action leaves whole: 2 for P1 x P1 and 1 for P2.
    """

    action: CyclicAction
    singular_locus: tuple[FixedPointRecord, ...]
    volume: Fraction
    aut0_dim: Optional[int]
    b2_base: int

    def to_json_dict(self) -> dict:
        return {
            "action": self.action.to_json_dict(),
            "singular_locus": [r.to_json_dict() for r in self.singular_locus],
            "volume": rational_json(self.volume),
            "aut0_dim": self.aut0_dim,
            "b2_base": self.b2_base,
        }


@dataclass(frozen=True)
class QDefModel:
    """The assembled Q-Gorenstein deformation space of a surface.

    One block per singular point (rigid points keep an empty character
    list); weight_matrix holds the concatenated characters as columns,
    one per deformation parameter.
    """

    total_dim: int
    blocks: tuple[tuple[FixedPointRecord, tuple[Character, ...]], ...]
    weight_matrix: tuple[tuple[int, ...], tuple[int, ...]]

    def weight_system(self) -> WeightSystem:
        if self.total_dim == 0:
            raise ValueError("the deformation space is zero dimensional")
        return WeightSystem(rank=2, n_coords=self.total_dim, matrix=self.weight_matrix)

    def columns(self) -> tuple[Character, ...]:
        return tuple(zip(*self.weight_matrix)) if self.total_dim else ()

    def to_json_dict(self) -> dict:
        return {
            "total_dim": self.total_dim,
            "blocks": [
                [record.to_json_dict(), [list(c) for c in chars]]
                for record, chars in self.blocks
            ],
            "weight_matrix": [list(row) for row in self.weight_matrix],
        }


def _check_isolated(action: CyclicAction) -> None:
    l = action.order
    if action.ambient == P1XP1:
        for f, w in enumerate(action.weights, start=1):
            g = gcd(w, l)
            if g != 1:
                raise NonIsolatedError(
                    f"factor {f} weight {w} has gcd {g} with l = {l}: the "
                    f"order-{g} subgroup fixes that factor pointwise, so the "
                    "fixed locus contains curves"
                )
    else:
        for i in range(3):
            for j in range(i + 1, 3):
                g = gcd(action.weights[i] - action.weights[j], l)
                if g != 1:
                    k = 3 - i - j
                    raise NonIsolatedError(
                        f"weights on z{i} and z{j} agree under the order-{g} "
                        f"subgroup, which acts trivially on the line z{k} = 0, "
                        "fixing it pointwise"
                    )


def _p1xp1_records(action: CyclicAction) -> list[FixedPointRecord]:
    l = action.order
    w1, w2 = action.weights
    factor_labels = ("[0:1]", "[1:0]")
    records = []
    for p1 in (0, 1):
        for p2 in (0, 1):
            a = w1 if p1 == 0 else -w1
            b = w2 if p2 == 0 else -w2
            alpha = (1 if p1 == 0 else -1, 0)
            beta = (0, 1 if p2 == 0 else -1)
            records.append(
                FixedPointRecord(
                    point_label=f"({factor_labels[p1]},{factor_labels[p2]})",
                    stabilizer_order=l,
                    local_cyclic_weights=(a % l, b % l),
                    local_torus_weights=(alpha, beta),
                    singularity=normalize(
                        CyclicQuotientSingularity(l, a, b)
                    ).canonical(),
                )
            )
    return records


_P2_CHARACTERS = ((1, 0), (0, 1), (0, 0))


def _p2_records(action: CyclicAction) -> list[FixedPointRecord]:
    l = action.order
    records = []
    for i in range(3):
        js = [j for j in range(3) if j != i]
        a, b = ((action.weights[j] - action.weights[i]) % l for j in js)
        chars = tuple(
            tuple(x - y for x, y in zip(_P2_CHARACTERS[j], _P2_CHARACTERS[i]))
            for j in js
        )
        label = "[" + ":".join("1" if j == i else "0" for j in range(3)) + "]"
        records.append(
            FixedPointRecord(
                point_label=label,
                stabilizer_order=l,
                local_cyclic_weights=(a, b),
                local_torus_weights=chars,
                singularity=normalize(CyclicQuotientSingularity(l, a, b)).canonical(),
            )
        )
    return records


def build_surface(action: CyclicAction) -> SurfaceModel:
    """Quotient the ambient by the action and record the singular locus.

    Rejects actions whose fixed locus is not isolated (for the Y family
    with even l: the order-2 subgroup fixes the line z2 = 0 pointwise).
    The volume is (ambient anticanonical degree)/l since the quotient
    map is unramified away from finitely many points.
    """
    _check_isolated(action)
    if action.ambient == P1XP1:
        records = _p1xp1_records(action)
        degree = 8
        b2_base = 2
    else:
        records = _p2_records(action)
        degree = 9
        b2_base = 1
    aut0 = 2 if (action.is_x_preset or action.is_y_preset) else None
    return SurfaceModel(
        action=action,
        singular_locus=tuple(records),
        volume=Fraction(degree, action.order),
        aut0_dim=aut0,
        b2_base=b2_base,
    )


def assemble_qdef(surface: SurfaceModel) -> QDefModel:
    """Direct sum of the local Q-Gorenstein deformation spaces.

    There are no local-to-global obstructions for these surfaces, so the
    versal space is the sum of the local ones; each parameter carries
    the torus character computed from the chart characters at its point.
    Rigid points contribute empty blocks; a point with unknown
    deformation theory is an error naming the point.
    """
    blocks = []
    columns: list[Character] = []
    for record in surface.singular_locus:
        cls = classify(record.singularity)
        if cls.qdef_dim is None:
            raise UnknownDeformationError(
                f"point {record.point_label}: no deformation dimension known "
                f"for {record.singularity.display()}"
            )
        if cls.qdef_dim == 0:
            blocks.append((record, ()))
            continue
        chars = tuple(versal_weights(record.singularity, record.local_torus_weights))
        blocks.append((record, chars))
        columns.extend(chars)
    matrix = (
        tuple(c[0] for c in columns),
        tuple(c[1] for c in columns),
    )
    return QDefModel(total_dim=len(columns), blocks=tuple(blocks), weight_matrix=matrix)


def betti_of_generic_smoothing(surface: SurfaceModel) -> int:
    """Second Betti number of the surface a generic polystable deformation
    reaches: the Du Val and T points smooth, rigid points persist.

    A smoothed A_{n-1} point contributes its chain of n-1 vanishing
    2-spheres. A smoothed T-point of co-index r with w = m r contributes
    m - 1: its Milnor fiber is the free Z_r quotient of the fiber of
    x y = z^(m r), whose Euler characteristic m r + 1 - (m r - m) drops
    to m after the quotient bookkeeping, leaving b_2 = m - 1 (zero for
    the primitive case, as the degree-2 del Pezzo value 8 at l = 4
    confirms).
    """
    total = surface.b2_base
    for record in surface.singular_locus:
        cls = classify(record.singularity)
        if cls.qdef_dim is None:
            raise UnknownDeformationError(
                f"point {record.point_label}: no deformation dimension known "
                f"for {record.singularity.display()}"
            )
        if cls.is_du_val:
            total += record.singularity.order - 1
        elif cls.is_T:
            total += cls.m - 1
    return total
