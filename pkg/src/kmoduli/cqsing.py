"""Cyclic quotient surface singularities.

Normal forms 1/n(1,q), Hirzebruch-Jung resolutions, discrepancies,
Gorenstein indices, and the arithmetic governing Q-Gorenstein
deformations: rigid / T / Du Val classification and the torus
characters of the versal deformation parameters.

All arithmetic is exact (arbitrary-precision integers and
fractions.Fraction); no floating point is used anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Character = tuple[int, int]


class NonIsolatedError(ValueError):
    """Weight data whose fixed locus is positive-dimensional."""


class UnknownDeformationError(ValueError):
    """The Q-Gorenstein deformation space is outside what this engine computes."""


@dataclass(frozen=True)
class CyclicQuotientSingularity:
    """The germ at the origin of C^2 / Z_n acting by (u, v) -> (zeta^a u, zeta^b v).

    Weights are stored reduced mod n. Both weights must be coprime to n,
    otherwise a coordinate axis is fixed pointwise and the singularity is
    not isolated. order = 1 denotes a smooth point.
    """

    order: int
    weight_a: int
    weight_b: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order}")
        object.__setattr__(self, "weight_a", self.weight_a % self.order)
        object.__setattr__(self, "weight_b", self.weight_b % self.order)
        for name, w in (("a", self.weight_a), ("b", self.weight_b)):
            g = gcd(self.order, w)
            if g != 1:
                raise NonIsolatedError(
                    f"1/{self.order}({self.weight_a},{self.weight_b}): "
                    f"gcd(n, weight_{name}) = {g} != 1, an axis is fixed pointwise"
                )

    def __str__(self) -> str:
        return f"1/{self.order}({self.weight_a},{self.weight_b})"


_SING_RE = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")


def parse_singularity(text: str) -> CyclicQuotientSingularity:
    """Parse the input syntax "1/n(a,b)"; negative weights reduce mod n."""
    m = _SING_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse singularity {text!r}, expected \"1/n(a,b)\"")
    n, a, b = (int(g) for g in m.groups())
    return CyclicQuotientSingularity(n, a, b)


@dataclass(frozen=True)
class NormalForm:
    """The normal form 1/n(1,q), with q = None exactly when n = 1 (smooth).

    Two normal forms present the same singularity iff they are equal or
    q * q' = 1 mod n (swapping the two chart coordinates inverts q).
    """

    order: int
    q: int | None

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order}")
        if self.order == 1:
            if self.q is not None:
                raise ValueError("smooth normal form must have q = None")
        else:
            if self.q is None:
                raise ValueError(f"normal form of order {self.order} needs q")
            if not 1 <= self.q < self.order or gcd(self.order, self.q) != 1:
                raise ValueError(
                    f"q = {self.q} must satisfy 1 <= q < {self.order} and gcd = 1"
                )

    @property
    def is_smooth(self) -> bool:
        return self.order == 1

    def inverse_partner(self) -> "NormalForm":
        """The equivalent form 1/n(1, q^(-1) mod n) seen in the swapped chart."""
        if self.is_smooth:
            return self
        return NormalForm(self.order, pow(self.q, -1, self.order))

    def canonical(self) -> "NormalForm":
        """The representative of the equivalence class with the smaller q."""
        if self.is_smooth:
            return self
        return NormalForm(self.order, min(self.q, pow(self.q, -1, self.order)))

    def is_equivalent_to(self, other: "NormalForm") -> bool:
        return self.canonical() == other.canonical()

    def display(self) -> str:
        if self.is_smooth:
            return "smooth"
        if self.q == self.order - 1:
            return f"A_{self.order - 1}"
        return f"1/{self.order}(1,{self.q})"

    def to_json_dict(self) -> dict:
        return {"order": self.order, "q": self.q}


def normalize(s: CyclicQuotientSingularity) -> NormalForm:
    """Scale the first weight to 1: 1/n(a,b) = 1/n(1, a^(-1) b mod n).

    Idempotent on already-normalized input.
    """
    if s.order == 1:
        return NormalForm(1, None)
    q = (pow(s.weight_a, -1, s.order) * s.weight_b) % s.order
    return NormalForm(s.order, q)


@dataclass(frozen=True)
class HJResolution:
    """The minimal resolution of 1/n(1,q): a chain of rational curves.

    coefficients are the continued-fraction digits of n/q,
        n/q = b_1 - 1/(b_2 - 1/(... - 1/b_k)),   all b_i >= 2;
    curve i has self-intersection -b_i.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a resolution chain needs at least one curve")
        if any(b < 2 for b in self.coefficients):
            raise ValueError(f"all chain coefficients must be >= 2: {self.coefficients}")

    @property
    def self_intersections(self) -> tuple[int, ...]:
        return tuple(-b for b in self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)


def hirzebruch_jung(nf: NormalForm) -> HJResolution:
    """The Hirzebruch-Jung continued-fraction expansion of n/q."""
    if nf.order < 2:
        raise ValueError("a smooth point has no exceptional curves to resolve")
    n, q = nf.order, nf.q
    coeffs = []
    while q > 0:
        b = -(-n // q)
        coeffs.append(b)
        n, q = q, b * q - n
    return HJResolution(tuple(coeffs))


def continued_fraction_value(coefficients: tuple[int, ...]) -> Fraction:
    """Evaluate b_1 - 1/(b_2 - 1/(... - 1/b_k)) exactly."""
    if not coefficients:
        raise ValueError("empty continued fraction")
    value = Fraction(coefficients[-1])
    for b in reversed(coefficients[:-1]):
        value = b - 1 / value
    return value


@dataclass(frozen=True)
class DiscrepancyVector:
    """Exceptional-curve coefficients a_i in K_resolution = pullback(K) + sum a_i E_i."""

    values: tuple[Fraction, ...]

    @property
    def log_values(self) -> tuple[Fraction, ...]:
        """The same data in the shifted convention 1 + a_i."""
        return tuple(1 + a for a in self.values)


def discrepancies(hj: HJResolution) -> DiscrepancyVector:
    """Solve the chain system for the discrepancies of the resolution.

    Adjunction on each curve E_j (a smooth rational curve of
    self-intersection -b_j meeting its chain neighbors once) gives the
    tridiagonal system

        a_{j-1} - b_j a_j + a_{j+1} = b_j - 2,   a_0 = a_{k+1} = 0,

    solved exactly by elimination. All values lie in (-1, 0] and vanish
    exactly on all-2 chains (Du Val points).
    """
    bs = hj.coefficients
    k = len(bs)
    diag = [Fraction(-b) for b in bs]
    rhs = [Fraction(b - 2) for b in bs]
    for j in range(1, k):
        f = Fraction(1) / diag[j - 1]
        diag[j] -= f
        rhs[j] -= f * rhs[j - 1]
    values = [Fraction(0)] * k
    values[k - 1] = rhs[k - 1] / diag[k - 1]
    for j in range(k - 2, -1, -1):
        values[j] = (rhs[j] - values[j + 1]) / diag[j]
    return DiscrepancyVector(tuple(values))


def gorenstein_index(nf: NormalForm) -> int:
    """The smallest r >= 1 such that r * K is Cartier at the point: n / gcd(n, q+1)."""
    if nf.is_smooth:
        return 1
    return nf.order // gcd(nf.order, nf.q + 1)


@dataclass(frozen=True)
class SingularityClassification:
    """Deformation-theoretic classification of 1/n(1,q).

    With w = gcd(n, q+1), r = n/w and the Euclidean division
    w = m*r + w0 (0 <= w0 < r):

      * is_qg_rigid  iff m = 0   iff w^2 < n,
      * is_T         iff w0 = 0  iff n divides w^2,
      * is_du_val    iff r = 1   iff q = n - 1,
      * is_primitive_T iff T with m = 1.

    qdef_dim is the dimension of the space of Q-Gorenstein deformations:
    0 when smooth or rigid, n-1 for the Du Val point A_{n-1}, m for a
    T-singularity with r >= 2, and None when no formula is implemented
    (non-T, non-rigid, non-Du-Val cases).
    """

    normal_form: NormalForm
    w: int
    r: int
    m: int
    w0: int
    is_du_val: bool
    is_T: bool
    is_primitive_T: bool
    is_qg_rigid: bool
    qdef_dim: int | None

    def to_json_dict(self) -> dict:
        return {
            "normal_form": self.normal_form.to_json_dict(),
            "w": self.w,
            "r": self.r,
            "m": self.m,
            "w0": self.w0,
            "is_du_val": self.is_du_val,
            "is_T": self.is_T,
            "is_primitive_T": self.is_primitive_T,
            "is_qg_rigid": self.is_qg_rigid,
            "qdef_dim": self.qdef_dim,
        }


def classify(nf: NormalForm) -> SingularityClassification:
    """Classify 1/n(1,q) by the (w, r, m, w0) arithmetic.

    The result is invariant under q -> q^(-1) mod n. A smooth point
    reports qdef_dim 0 with the flags the r = 1 arithmetic produces
    (the A_0 convention).
    """
    n = nf.order
    q_plus_1 = 1 if nf.is_smooth else nf.q + 1
    w = gcd(n, q_plus_1)
    r = n // w
    m, w0 = divmod(w, r)
    is_du_val = r == 1
    is_T = w0 == 0
    is_rigid = m == 0
    if nf.is_smooth or is_rigid:
        qdef: int | None = 0
    elif is_du_val:
        qdef = n - 1
    elif is_T:
        qdef = m
    else:
        qdef = None
    return SingularityClassification(
        normal_form=nf,
        w=w,
        r=r,
        m=m,
        w0=w0,
        is_du_val=is_du_val,
        is_T=is_T,
        is_primitive_T=is_T and m == 1,
        is_qg_rigid=is_rigid,
        qdef_dim=qdef,
    )


def versal_weights(
    nf: NormalForm, local_weights: tuple[Character, Character]
) -> list[Character]:
    """Torus characters of the versal Q-Gorenstein deformation parameters.

    local_weights = (alpha, beta) are the characters of the 2-torus on the
    two orbifold-chart coordinates at the point (a coordinate c on which
    the torus acts as c -> lambda^chi c is recorded with character chi).

    The deformation parameters sit in the equation of the index-one
    cover, x*y = z^(d*nT) + sum_j a_j z^(j*nT) with wt(z) = alpha + beta,
    so a_j carries character (d - j) * nT * (alpha + beta):

      * A_{n-1}: d = n, nT = 1, j = 0..n-2, characters (n, n-1, ..., 2)*(alpha+beta);
      * T with r >= 2: d = m, nT = r, j = 0..m-1, characters (m*r, ..., r)*(alpha+beta).

    Output length equals qdef_dim; every character is a nonzero multiple
    of alpha + beta.
    """
    cls = classify(nf)
    if cls.qdef_dim is None:
        raise UnknownDeformationError(
            f"{nf.display()}: no Q-Gorenstein deformation formula implemented"
        )
    if cls.qdef_dim == 0:
        raise ValueError(f"{nf.display()} has no Q-Gorenstein deformations")
    alpha, beta = local_weights
    s = (alpha[0] + beta[0], alpha[1] + beta[1])
    if cls.is_du_val:
        coefs = range(nf.order, 1, -1)
    else:
        coefs = (c * cls.r for c in range(cls.m, 0, -1))
    return [(c * s[0], c * s[1]) for c in coefs]
