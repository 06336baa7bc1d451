"""Exterior algebra of polynomial differential forms.

A ``DiffForm`` of degree k on variables u_1..u_N stores a sparse map from
strictly increasing k-index-subsets to polynomial coefficients.  The three
operations needed downstream are the wedge product, the exterior derivative,
and contraction with the Euler vector field sum(v_i u_i d/du_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import RingMismatchError
from .poly import MultiPoly

IndexSet = tuple[int, ...]


@dataclass(frozen=True)
class EulerField:
    """Positive integer variable weights with gcd 1."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.weights or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        g = 0
        for w in self.weights:
            g = gcd(g, w)
        if g != 1:
            raise ValueError(f"weights {self.weights} have gcd {g} != 1")

    @classmethod
    def unchecked(cls, weights) -> "EulerField":
        """Internal constructor for restricted weight tuples (gcd may exceed 1)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "weights", tuple(weights))
        return obj


class DiffForm:
    """Polynomial-coefficient exterior form of fixed degree."""

    __slots__ = ("ring", "degree", "components")

    def __init__(
        self,
        ring: Sequence[str],
        degree: int,
        components: Mapping[IndexSet, MultiPoly] | None = None,
    ):
        self.ring = tuple(ring)
        n = len(self.ring)
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = degree
        comps: dict[IndexSet, MultiPoly] = {}
        if components:
            for idx, p in components.items():
                idx = tuple(idx)
                if len(idx) != degree or list(idx) != sorted(set(idx)):
                    raise ValueError(f"index set {idx} not strictly increasing of size {degree}")
                if idx and (idx[0] < 0 or idx[-1] >= n):
                    raise ValueError(f"index {idx} out of range for {n} variables")
                if p.ring != self.ring:
                    raise RingMismatchError("component ring mismatch")
                if not p.is_zero():
                    comps[idx] = comps[idx] + p if idx in comps else p
        self.components = {k: v for k, v in comps.items() if not v.is_zero()}

    @classmethod
    def zero(cls, ring: Sequence[str], degree: int) -> "DiffForm":
        return cls(ring, degree, {})

    @classmethod
    def function(cls, p: MultiPoly) -> "DiffForm":
        return cls(p.ring, 0, {(): p})

    @classmethod
    def d_variable(cls, ring: Sequence[str], name: str) -> "DiffForm":
        ring = tuple(ring)
        i = ring.index(name)
        return cls(ring, 1, {(i,): MultiPoly.constant(ring, 1)})

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiffForm)
            and self.ring == other.ring
            and self.degree == other.degree
            and self.components == other.components
        )

    def __add__(self, other: "DiffForm") -> "DiffForm":
        if self.ring != other.ring or self.degree != other.degree:
            raise RingMismatchError("cannot add forms of different type")
        comps = dict(self.components)
        for idx, p in other.components.items():
            s = comps[idx] + p if idx in comps else p
            if s.is_zero():
                comps.pop(idx, None)
            else:
                comps[idx] = s
        out = DiffForm.__new__(DiffForm)
        out.ring, out.degree, out.components = self.ring, self.degree, comps
        return out

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "DiffForm":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "DiffForm":
        out = DiffForm.__new__(DiffForm)
        out.ring, out.degree = self.ring, self.degree
        if c == 0:
            out.components = {}
        else:
            out.components = {i: p.scale(c) for i, p in self.components.items()}
        return out

    def mul_poly(self, q: MultiPoly) -> "DiffForm":
        if q.ring != self.ring:
            raise RingMismatchError("coefficient ring mismatch")
        out = DiffForm.__new__(DiffForm)
        out.ring, out.degree = self.ring, self.degree
        if q.is_zero():
            out.components = {}
        else:
            out.components = {i: p * q for i, p in self.components.items()}
        return out

    def weight(self, euler: EulerField) -> int | None:
        """Weight if weighted-homogeneous (coefficient weight + leg weights)."""
        seen: set[int] = set()
        v = euler.weights
        for idx, p in self.components.items():
            legs = sum(v[i] for i in idx)
            for e in p.terms:
                seen.add(legs + sum(w * k for w, k in zip(v, e)))
            if len(seen) > 1:
                return None
        if not seen:
            return None
        return seen.pop()

    def __repr__(self):
        if not self.components:
            return f"DiffForm(0, degree={self.degree})"
        bits = []
        for idx in sorted(self.components):
            legs = "^".join(f"d{self.ring[i]}" for i in idx) or "1"
            bits.append(f"({self.components[idx].pretty()}) {legs}")
        return "DiffForm[" + " + ".join(bits) + "]"


def _merge_indices(a: IndexSet, b: IndexSet) -> tuple[IndexSet, int] | None:
    """Merge two strictly increasing tuples; None if they collide.

    Returns the merged tuple and the permutation sign.
    """
    if set(a) & set(b):
        return None
    merged = a + b
    # count inversions of the concatenation for the sign
    inv = 0
    for i, x in enumerate(merged):
        for y in merged[i + 1 :]:
            if y < x:
                inv += 1
    return tuple(sorted(merged)), (-1) ** inv


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    if a.ring != b.ring:
        raise RingMismatchError("ambient mismatch in wedge")
    deg = a.degree + b.degree
    n = len(a.ring)
    if deg > n:
        # only the zero form exists above top degree; keep the formal degree
        return DiffForm.zero(a.ring, deg)
    comps: dict[IndexSet, MultiPoly] = {}
    for ia, pa in a.components.items():
        for ib, pb in b.components.items():
            m = _merge_indices(ia, ib)
            if m is None:
                continue
            idx, sign = m
            q = pa * pb
            if sign < 0:
                q = -q
            s = comps[idx] + q if idx in comps else q
            if s.is_zero():
                comps.pop(idx, None)
            else:
                comps[idx] = s
    out = DiffForm.__new__(DiffForm)
    out.ring, out.degree, out.components = a.ring, deg, comps
    return out


def wedge_all(forms: Sequence[DiffForm]) -> DiffForm:
    if not forms:
        raise ValueError("empty wedge")
    acc = forms[0]
    for f in forms[1:]:
        acc = wedge(acc, f)
    return acc


def exterior_d(a: DiffForm) -> DiffForm:
    n = len(a.ring)
    if a.degree >= n:
        return DiffForm.zero(a.ring, a.degree + 1)
    comps: dict[IndexSet, MultiPoly] = {}
    for idx, p in a.components.items():
        for i, var in enumerate(a.ring):
            dp = p.partial(var)
            if dp.is_zero():
                continue
            m = _merge_indices((i,), idx)
            if m is None:
                continue
            midx, sign = m
            q = dp if sign > 0 else -dp
            s = comps[midx] + q if midx in comps else q
            if s.is_zero():
                comps.pop(midx, None)
            else:
                comps[midx] = s
    out = DiffForm.__new__(DiffForm)
    out.ring, out.degree, out.components = a.ring, a.degree + 1, comps
    return out


def d_of_poly(p: MultiPoly) -> DiffForm:
    return exterior_d(DiffForm.function(p))


def contract_euler(a: DiffForm, euler: EulerField) -> DiffForm:
    """Interior product with the Euler field: an anti-derivation of degree -1."""
    if len(euler.weights) != len(a.ring):
        raise RingMismatchError("Euler field does not match ambient")
    if a.degree == 0:
        return DiffForm.zero(a.ring, 0)
    comps: dict[IndexSet, MultiPoly] = {}
    for idx, p in a.components.items():
        for k, i in enumerate(idx):
            rest = idx[:k] + idx[k + 1 :]
            coeff = p.mul_term(_unit_exp(len(a.ring), i), Fraction(euler.weights[i]))
            if k % 2 == 1:
                coeff = -coeff
            s = comps[rest] + coeff if rest in comps else coeff
            if s.is_zero():
                comps.pop(rest, None)
            else:
                comps[rest] = s
    out = DiffForm.__new__(DiffForm)
    out.ring, out.degree, out.components = a.ring, a.degree - 1, comps
    return out


def _unit_exp(n: int, i: int) -> tuple[int, ...]:
    e = [0] * n
    e[i] = 1
    return tuple(e)
