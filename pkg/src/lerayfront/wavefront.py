"""Wavefront defining polynomial via substitution into the system discriminant.

The front polynomial phi(x, t, s) is det M(y) evaluated along
y0 = s, y1 = (-W_1 | 0) depending on the case, and y_i = W_i(x, t) through
the recorded couplings.  For small systems the determinant is taken first;
for large ones the substitution happens entry-wise and the determinant is
recovered by degree-probed grid interpolation with exact post-verification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .detpoly import degree_bounds, det_bareiss, _det_rational
from .errors import MismatchError, ResourceLimitError, ZeroAfterSubstitutionError
from .gcdtools import squarefree_part
from .gaussmanin import GaussManinData, discriminant
from .phase import IcisMap
from .poly import MultiPoly, poly_substitute

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class FrontResult:
    """The pulled-back discriminant and its normalizations."""

    phi: MultiPoly
    raw: MultiPoly
    squarefree: MultiPoly | None
    case: str
    substitution: dict[str, MultiPoly]
    power: int
    strategy: str
    metadata: dict = field(default_factory=dict)


def front_ring(n: int, symbolic_s: bool) -> tuple[str, ...]:
    base = [f"x{i + 1}" for i in range(n)] + ["t"]
    if symbolic_s:
        base.append("s")
    return tuple(base)


def front_substitution(
    icis: IcisMap, s_value: Fraction | None
) -> tuple[tuple[str, ...], dict[str, MultiPoly]]:
    """The y -> (s, case rule, W couplings) binding map."""
    ring = front_ring(icis.n, symbolic_s=s_value is None)
    if s_value is None:
        s_poly = MultiPoly.variable(ring, "s")
    else:
        s_poly = MultiPoly.constant(ring, Fraction(s_value))
    bindings: dict[str, MultiPoly] = {"y0": s_poly}
    if icis.case == "case1":
        bindings["y1"] = icis.y1_value.rename_ring(ring)
    else:
        bindings["y1"] = MultiPoly.zero(ring)
    for c in icis.couplings:
        bindings[f"y{c.y_index}"] = c.w_poly.rename_ring(ring)
    missing = [f"y{i}" for i in range(icis.K) if f"y{i}" not in bindings]
    if missing:
        raise ValueError(f"substitution misses parameters {missing}")
    return ring, bindings


def front_polynomial(
    data: GaussManinData,
    icis: IcisMap,
    s_value: Fraction | None = None,
    strategy: str = "auto",
    det_strategy: str = "bareiss",
    seed: int = 0,
    max_grid: int = 400_000,
) -> FrontResult:
    """Pull the discriminant back along the front substitution and normalize.

    ``strategy``: ``det-first`` computes det M(y) symbolically then
    substitutes; ``substitute-first`` substitutes entry-wise and then takes
    the determinant (Bareiss below the size threshold, otherwise probed
    interpolation); ``auto`` picks by system size.
    """
    ring, bindings = front_substitution(icis, s_value)
    if strategy == "auto":
        strategy = "det-first" if data.mu <= 6 else "substitute-first"
    if strategy == "det-first":
        if data.delta is None:
            discriminant(data, strategy=det_strategy)
        raw = poly_substitute(data.delta_raw, bindings)
    elif strategy == "substitute-first":
        M_sub = [
            [poly_substitute(e, bindings) for e in row] for row in data.M
        ]
        if data.mu <= 8:
            raw = det_bareiss(M_sub)
        else:
            raw = _det_probed_interpolation(M_sub, ring, seed=seed, max_grid=max_grid)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if raw.is_zero():
        raise ZeroAfterSubstitutionError(
            "discriminant pullback vanishes identically; raw system kept for diagnosis"
        )
    phi = raw.primitive_part()
    try:
        sf = squarefree_part(phi)
        sf_note = "computed"
    except ResourceLimitError:
        sf = None
        sf_note = "skipped: gcd resource cap"
    return FrontResult(
        phi=phi,
        raw=raw,
        squarefree=sf,
        case=icis.case,
        substitution=bindings,
        power=icis.power,
        strategy=strategy,
        metadata={
            "s": "symbolic" if s_value is None else str(Fraction(s_value)),
            "squarefree": sf_note,
            "sign_normalization": icis.sign,
            "case1_bookkeeping": "constant monomial mapped to the y1 direction",
        },
    )


def _variable_parity(M_sub, ring) -> list[int]:
    """Per-variable gcd of exponents across all entries (for grid compression)."""
    out = []
    for i, v in enumerate(ring):
        g = 0
        for row in M_sub:
            for p in row:
                for e in p.terms:
                    g = gcd(g, e[i])
        out.append(g if g > 0 else 1)
    return out


def _peel_single_entries(M: list[list[MultiPoly]], ring):
    """Laplace-expand along rows/columns with exactly one nonzero entry.

    Returns (factor polynomial, sign, reduced matrix); repeated until no
    such row or column remains.  Exact, and it shrinks both the matrix and
    the interpolation grid.
    """
    factor = MultiPoly.constant(ring, 1)
    sign = 1
    m = [list(row) for row in M]
    changed = True
    while changed and m:
        changed = False
        n = len(m)
        for i in range(n):
            nz = [j for j in range(n) if not m[i][j].is_zero()]
            if len(nz) == 0:
                return MultiPoly.zero(ring), 1, []
            if len(nz) == 1:
                j = nz[0]
                factor = factor * m[i][j]
                sign *= (-1) ** (i + j)
                m = [
                    [m[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                changed = True
                break
        if changed or not m:
            continue
        n = len(m)
        for j in range(n):
            nz = [i for i in range(n) if not m[i][j].is_zero()]
            if len(nz) == 0:
                return MultiPoly.zero(ring), 1, []
            if len(nz) == 1:
                i = nz[0]
                factor = factor * m[i][j]
                sign *= (-1) ** (i + j)
                m = [
                    [m[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                changed = True
                break
    return factor, sign, m


def _det_probed_interpolation(
    M_sub: list[list[MultiPoly]],
    ring: tuple[str, ...],
    seed: int = 0,
    max_grid: int = 400_000,
    verify_points: int = 4,
) -> MultiPoly:
    """Determinant of a substituted matrix by probed-degree interpolation.

    Single-entry rows and columns are peeled off exactly first.  Then the
    per-variable degrees of the remaining determinant are discovered along
    random axis-parallel lines (twice, max taken), the grid is evaluated
    exactly over integer-scaled rows, and the interpolant is verified
    against direct determinant values at extra random points, falling back
    to safe degree bounds on a verification failure.
    """
    rng = random.Random(seed)
    factor, sign, core = _peel_single_entries(M_sub, ring)
    if not core:
        return factor.scale(sign)
    parity = _variable_parity(core, ring)
    compressed, cring = _compress_exponents(core, ring, parity)
    safe = degree_bounds(compressed)
    bounds = _probe_degrees(compressed, cring, rng, safe)
    bounds = [min(b, s) for b, s in zip(bounds, safe)]

    def run(bnds) -> MultiPoly | None:
        npts = 1
        for b in bnds:
            npts *= b + 1
        if npts > max_grid:
            return None
        values = _grid_values(compressed, cring, bnds)
        return _tensor_interpolate(values, bnds, cring)

    det = run(bounds)
    if det is None:
        raise ResourceLimitError(
            "interpolation grid exceeds cap even at probed degrees",
            kind="front-grid",
            limit=max_grid,
        )
    for _ in range(verify_points):
        pt = {v: Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for v in cring}
        direct = _det_rational(
            [[p.eval_exact(pt) for p in row] for row in compressed]
        )
        if det.eval_exact(pt) != direct:
            det = run(safe)
            if det is None:
                raise MismatchError(
                    "probed interpolation failed verification and safe bounds "
                    f"exceed the grid cap {max_grid}"
                )
            break
    det = _decompress_exponents(det, ring, parity)
    return (factor * det).scale(sign)


def _compress_exponents(M_sub, ring, parity):
    if all(g == 1 for g in parity):
        return M_sub, ring
    out = []
    for row in M_sub:
        new_row = []
        for p in row:
            terms = {}
            for e, c in p.terms.items():
                terms[tuple(x // g for x, g in zip(e, parity))] = c
            new_row.append(MultiPoly(ring, terms))
        out.append(new_row)
    return out, ring


def _decompress_exponents(p: MultiPoly, ring, parity) -> MultiPoly:
    if all(g == 1 for g in parity):
        return p
    terms = {}
    for e, c in p.terms.items():
        terms[tuple(x * g for x, g in zip(e, parity))] = c
    return MultiPoly(ring, terms)


def _probe_degrees(M_sub, ring, rng, safe: list[int]) -> list[int]:
    """Actual per-variable degree of det(M) along random axis-parallel lines.

    The determinant is evaluated at safe_bound+1 nodes and interpolated as a
    univariate; the trimmed degree is the probe.  Two lines per variable,
    max taken.
    """
    bounds = []
    for k, v in enumerate(ring):
        best = 0
        for _ in range(2):
            point = {w: Fraction(rng.randint(2, 19)) for w in ring if w != v}
            spec = [[p.substitute_partial(point) for p in row] for row in M_sub]
            vals = []
            for a in range(safe[k] + 1):
                m = [
                    [p.substitute_partial({v: Fraction(a)}).constant_value() for p in row]
                    for row in spec
                ]
                vals.append(_det_rational(m))
            coeffs = _interp_1d(vals)
            deg = len(coeffs) - 1
            while deg > 0 and coeffs[deg] == 0:
                deg -= 1
            if coeffs[deg] == 0:
                deg = 0
            best = max(best, deg)
        bounds.append(best)
    return bounds


def _interp_1d(vals: list[Fraction]) -> list[Fraction]:
    """Monomial coefficients of the polynomial through (i, vals[i]), i = 0..n-1."""
    n = len(vals)
    dd = [Fraction(x) for x in vals]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / level
    coeffs = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        nxt = [ZERO] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] += c * (-i)
        nxt[0] += dd[i]
        coeffs = nxt
    return coeffs


def thread_budget() -> int:
    """Parallelism budget from LERAYFRONT_THREADS (default 1)."""
    import os

    try:
        return max(1, int(os.environ.get("LERAYFRONT_THREADS", "1")))
    except ValueError:
        return 1


def _int_subst(entry: dict, var_index: int, a: int) -> dict:
    out: dict = {}
    for e, c in entry.items():
        val = c * a ** e[var_index] if e[var_index] else c
        e2 = e[:var_index] + (0,) + e[var_index + 1 :]
        out[e2] = out.get(e2, 0) + val
    return out


def _grid_chunk(args) -> list[tuple[tuple[int, ...], int]]:
    """Evaluate integer determinants for a slice of outermost grid values."""
    from .linalg import det_int

    int_rows, nvars, bounds, outer_values = args
    out: list[tuple[tuple[int, ...], int]] = []

    def rec(mat, var_index, prefix):
        if var_index == nvars:
            ints = [[next(iter(p.values())) if p else 0 for p in row] for row in mat]
            out.append((prefix, det_int(ints)))
            return
        for a in range(bounds[var_index] + 1):
            sub = [[_int_subst(p, var_index, a) for p in row] for row in mat]
            rec(sub, var_index + 1, prefix + (a,))

    for a0 in outer_values:
        top = [[_int_subst(p, 0, a0) for p in row] for row in int_rows]
        rec(top, 1, (a0,))
    return out


def _grid_values(M_sub, ring, bounds) -> dict[tuple[int, ...], Fraction]:
    """det values on the integer grid, via integer-scaled rows and nested
    partial evaluation (shared variable prefixes are evaluated once).

    Honors the LERAYFRONT_THREADS budget by splitting the outermost axis
    across processes; results are merged by grid index, so the output is
    identical for any budget.
    """
    nvars = len(ring)
    scale = ONE
    int_rows: list[list[dict[tuple[int, ...], int]]] = []
    for row in M_sub:
        den = 1
        for p in row:
            for c in p.terms.values():
                den = den * c.denominator // gcd(den, c.denominator)
        scale *= den
        int_rows.append(
            [{e: int(c * den) for e, c in p.terms.items()} for p in row]
        )
    outer = list(range(bounds[0] + 1))
    budget = thread_budget()
    results: list[tuple[tuple[int, ...], int]] = []
    if budget > 1 and len(outer) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [outer[i::budget] for i in range(min(budget, len(outer)))]
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            for part in ex.map(
                _grid_chunk,
                [(int_rows, nvars, bounds, ch) for ch in chunks],
            ):
                results.extend(part)
    else:
        results = _grid_chunk((int_rows, nvars, bounds, outer))
    return {prefix: Fraction(d, 1) / scale for prefix, d in results}


def _tensor_interpolate(
    values: dict[tuple[int, ...], Fraction], bounds: list[int], ring
) -> MultiPoly:
    """Tensor-grid interpolation by 1-D Newton transforms along each axis."""
    nvars = len(bounds)
    data = dict(values)
    # transform axis by axis, innermost last index first
    for axis in range(nvars - 1, -1, -1):
        out: dict[tuple[int, ...], Fraction] = {}
        prefix_groups: dict[tuple, list] = {}
        b = bounds[axis]
        for key, val in data.items():
            rest = key[:axis] + key[axis + 1 :]
            prefix_groups.setdefault(rest, [ZERO] * (b + 1))[key[axis]] = val
        for rest, vals in prefix_groups.items():
            coeffs = _interp_1d(vals)
            for k, c in enumerate(coeffs):
                if c != 0:
                    out[rest[:axis] + (k,) + rest[axis:]] = c
        data = out
    terms = {e: c for e, c in data.items() if c != 0}
    return MultiPoly(ring, terms)


@dataclass
class TZeroReport:
    max_scaled_residual: float
    samples: int
    no_real_points: bool = False


def t_zero_check(
    fr: FrontResult,
    F: MultiPoly,
    s_value: Fraction,
    samples: int = 50,
    seed: int = 3,
    box: float = 2.5,
) -> TZeroReport:
    """Residual of phi(x, 0, s) on numerically sampled points of {F = s}.

    Residuals are scaled by the coefficient norm and a point-magnitude
    factor, so float evaluation error stays orders below the tolerances.
    """
    from .oracle import sample_level_set, scaled_residual

    pts = sample_level_set(F, Fraction(s_value), samples, seed=seed, box=box)
    if not pts:
        return TZeroReport(max_scaled_residual=float("nan"), samples=0, no_real_points=True)
    phi = fr.phi
    worst = 0.0
    for z in pts:
        values = {f"x{i + 1}": z[i] for i in range(len(z))}
        values["t"] = 0.0
        if "s" in phi.ring:
            values["s"] = float(s_value)
        worst = max(worst, scaled_residual(phi, values))
    return TZeroReport(max_scaled_residual=worst, samples=len(pts))
