"""Multivariate gcd and squarefree parts, sized for wavefront normalization.

The gcd uses a primitive-PRS remainder sequence in the variable of highest
degree, recursing on coefficients.  A seeded univariate-specialization
precheck short-circuits the common squarefree case; hard term-count caps
keep pathological inputs from hanging (callers then record the squarefree
part as unavailable).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import ResourceLimitError
from .poly import MultiPoly
from .univariate import degree as udeg, poly_gcd as upoly_gcd, derivative as uderiv

ZERO = Fraction(0)


def _to_univariate(p: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficient list of p in var, ascending; coefficients keep the full ring."""
    i = p.ring.index(var)
    d = p.degree_in(var)
    buckets: list[dict] = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        e2 = list(e)
        k = e2[i]
        e2[i] = 0
        buckets[k][tuple(e2)] = c
    return [MultiPoly(p.ring, b) for b in buckets]


def _from_univariate(coeffs: list[MultiPoly], var: str) -> MultiPoly:
    if not coeffs:
        raise ValueError("empty coefficient list")
    ring = coeffs[0].ring
    i = ring.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        for e, v in c.terms.items():
            e2 = list(e)
            e2[i] += k
            terms[tuple(e2)] = terms.get(tuple(e2), ZERO) + v
    return MultiPoly(ring, terms)


def _poly_content_in(p: MultiPoly, var: str) -> MultiPoly:
    coeffs = [c for c in _to_univariate(p, var) if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        g = multivariate_gcd(g, c)
        if g.is_constant():
            break
    return g


def multivariate_gcd(a: MultiPoly, b: MultiPoly, max_terms: int = 200_000) -> MultiPoly:
    """gcd over Q, normalized primitive with positive leading coefficient."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    if a.is_zero():
        return b.primitive_part()
    if b.is_zero():
        return a.primitive_part()
    if a.is_constant() or b.is_constant():
        return MultiPoly.constant(a.ring, 1)
    used = sorted(set(a.variables_used()) | set(b.variables_used()))
    if not used:
        return MultiPoly.constant(a.ring, 1)
    # choose the variable where the smaller max-degree lives, to keep PRS short
    var = min(used, key=lambda v: max(a.degree_in(v), b.degree_in(v)) or 10**9)
    if a.degree_in(var) == 0 or b.degree_in(var) == 0:
        # var missing from one side: gcd divides its content
        side, other = (a, b) if a.degree_in(var) == 0 else (b, a)
        return multivariate_gcd(side, _poly_content_in(other, var), max_terms)

    ca = _poly_content_in(a, var)
    cb = _poly_content_in(b, var)
    pa = a.exact_div(ca) if not ca.is_constant() else a
    pb = b.exact_div(cb) if not cb.is_constant() else b
    cont = multivariate_gcd(ca, cb, max_terms)

    # primitive PRS in var
    f, g = (pa, pb) if pa.degree_in(var) >= pb.degree_in(var) else (pb, pa)
    while True:
        if g.is_zero():
            result = f
            break
        if g.degree_in(var) == 0:
            result = MultiPoly.constant(a.ring, 1)
            break
        r = _pseudo_rem(f, g, var, max_terms)
        if r.is_zero():
            result = g
            break
        cr = _poly_content_in(r, var)
        r = r.exact_div(cr) if not cr.is_constant() else r
        f, g = g, r
    result = result.primitive_part()
    return (cont * result).primitive_part()


def _pseudo_rem(f: MultiPoly, g: MultiPoly, var: str, max_terms: int) -> MultiPoly:
    fc = _to_univariate(f, var)
    gc = _to_univariate(g, var)
    dg = len(gc) - 1
    lg = gc[-1]
    r = list(fc)
    while len(r) - 1 >= dg and any(not c.is_zero() for c in r):
        while len(r) > 1 and r[-1].is_zero():
            r.pop()
        if len(r) - 1 < dg:
            break
        lead = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lg for c in r]
        for i in range(dg + 1):
            r[shift + i] = r[shift + i] - lead * gc[i]
        r.pop()
        if sum(len(c.terms) for c in r) > max_terms:
            raise ResourceLimitError(
                "pseudo-remainder exceeded term cap", kind="gcd-terms", limit=max_terms
            )
    return _from_univariate(r, var) if r else MultiPoly.zero(f.ring)


def probably_squarefree(p: MultiPoly, seed: int = 7) -> bool:
    """Specialize all but one variable at random points and test gcd(p, p').

    A degree-preserving coprime specialization proves squarefreeness in that
    variable direction, so a pass over every used variable is a proof; only
    a False answer is (conservatively) inconclusive.
    """
    used = p.variables_used()
    if not used:
        return True
    rng = random.Random(seed)
    for v in sorted(used, key=lambda v: -p.degree_in(v)):
        ok = False
        for _ in range(4):
            point = {w: Fraction(rng.randint(-40, 40)) for w in used if w != v}
            q = p.substitute_partial(point)
            cs = _coeff_list_fraction(q, v)
            if udeg(cs) == p.degree_in(v):
                if udeg(upoly_gcd(cs, uderiv(cs))) <= 0:
                    ok = True
                    break
        if not ok:
            return False
    return True


def _coeff_list_fraction(p: MultiPoly, var: str) -> list[Fraction]:
    i = p.ring.index(var)
    d = p.degree_in(var)
    out = [ZERO] * (d + 1)
    for e, c in p.terms.items():
        rest = list(e)
        k = rest[i]
        rest[i] = 0
        if any(rest):
            raise ValueError("polynomial is not univariate after specialization")
        out[k] += c
    return out


def squarefree_part(
    p: MultiPoly, max_terms: int = 200_000, seed: int = 7, max_input_terms: int = 800
) -> MultiPoly:
    """p divided by gcd(p, dp/dx_i over all i); primitive, positive leading.

    The specialization precheck is cheap and proves squarefreeness when it
    passes; the remainder-sequence gcd only runs below a size cap (it can
    blow up on large dense inputs), raising ResourceLimitError above it.
    """
    if p.is_zero() or p.is_constant():
        return p.primitive_part() if not p.is_zero() else p
    p = p.primitive_part()
    if probably_squarefree(p, seed=seed):
        return p
    if len(p.terms) > max_input_terms or p.total_degree() > 80:
        raise ResourceLimitError(
            f"squarefree gcd skipped: {len(p.terms)} terms, degree {p.total_degree()}",
            kind="gcd-input",
            limit=max_input_terms,
        )
    g = p
    for v in p.variables_used():
        g = multivariate_gcd(g, p.partial(v), max_terms)
        if g.is_constant():
            return p
    return p.exact_div(g).primitive_part()
