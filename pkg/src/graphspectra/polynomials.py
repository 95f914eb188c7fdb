"""The bivariate spectral polynomial P(X, Y) = det(X*I - L(Y)) and friends.

P is monic in X of degree n with integer coefficients and zero constant
term (graph Laplacians are singular).  Each X-coefficient a_i is a sparse
integer polynomial in Y of degree at most the sum of all edge labels.

Sign convention is fixed once: the characteristic polynomial is always
det(X*I - M), so coefficient signs alternate against the spanning-forest
counts (see forests.buslov_polynomial).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError, ValidationError
from .unipoly import UniPoly


# ---------------------------------------------------------------------------
# Exact linear algebra on small dense matrices


def charpoly_division_free(M):
    """Characteristic polynomial det(X*I - M) of an exact square matrix.

    Division-free (Berkowitz): only +, -, * on the entries, so it is exact
    over ints and Fractions alike.  Returns a UniPoly in X.
    """
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValidationError("matrix is not square")
    C = _berkowitz_descending(M)
    return UniPoly({n - i: c for i, c in enumerate(C) if c})


def _berkowitz_descending(M):
    """Berkowitz recursion over any commutative ring; returns descending coeffs."""
    n = len(M)
    if n == 0:
        return [1]
    # coeffs of charpoly of the leading k x k block, descending powers of X
    C = [1, -M[0][0]]
    for k in range(1, n):
        R = M[k][:k]
        S = [M[i][k] for i in range(k)]
        t = [1, -M[k][k]]
        v = S
        for _ in range(k):
            t.append(-sum(R[l] * v[l] for l in range(k)))
            v = [sum(M[i][l] * v[l] for l in range(k)) for i in range(k)]
        # C_new = T * C with T lower-triangular Toeplitz, first column t
        C_new = [0] * (k + 2)
        for i in range(k + 2):
            acc = 0
            for j in range(max(0, i - len(t) + 1), min(i, k) + 1):
                acc = acc + t[i - j] * C[j]
            C_new[i] = acc
        C = C_new
    return C


def fraction_free_determinant(M):
    """Exact determinant by Bareiss elimination; integer-preserving."""
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(x) if not isinstance(x, int) else x for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num // prev if isinstance(num, int) else num / prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Spectral polynomials


@dataclass(frozen=True)
class SpectralPolynomial:
    """P(X, Y) = sum a_i(Y) X^i, monic in X, integer coefficients, a_0 = 0."""

    n: int
    coeffs: tuple  # a_0 .. a_n as UniPoly in Y

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValidationError("need exactly n+1 coefficient polynomials")
        for a in self.coeffs:
            if not isinstance(a, UniPoly):
                raise ValidationError("coefficients must be UniPoly")
            if not a.is_integer():
                raise ValidationError("coefficients must be integer polynomials")
        if self.coeffs[self.n] != UniPoly.const(1):
            raise ValidationError("polynomial must be monic in X")
        if not self.coeffs[0].is_zero():
            raise ValidationError("constant term a_0 must vanish")

    @property
    def y_degree(self):
        return max(a.degree for a in self.coeffs)

    def coefficient(self, i):
        return self.coeffs[i]

    def monomials(self):
        """Yield (c, xdeg, ydeg) over all nonzero monomials."""
        for i, a in enumerate(self.coeffs):
            for k, c in a.terms.items():
                yield c, i, k

    def __eq__(self, other):
        if not isinstance(other, SpectralPolynomial):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def format(self):
        parts = []
        for i in range(self.n, -1, -1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            ay = a.format("Y")
            if i == 0:
                parts.append(ay)
            else:
                x = "X" if i == 1 else f"X^{i}"
                parts.append(x if ay == "1" else f"({ay})*{x}")
        return " + ".join(parts) if parts else "0"


EVAL_INTERP_MAX_WEIGHT = 160


def spectral_polynomial(dp):
    """Exact P(X, Y) of a diffusion pair.

    For modest total label weight D: evaluate Y at the integers 0..D, run
    the division-free characteristic polynomial on each integer matrix, and
    interpolate every a_i exactly through the D+1 nodes.  Sparse label sets
    (e.g. powers of two) blow D up exponentially while the polynomial stays
    sparse, so past a threshold the same division-free recursion runs once
    over the polynomial ring Z[Y] instead.  Both paths are exact.
    """
    from .graphs import symbolic_laplacian

    n = dp.graph.n
    D = dp.total_weight
    sym = symbolic_laplacian(dp)
    if D > EVAL_INTERP_MAX_WEIGHT:
        C = _berkowitz_descending(sym)
        return SpectralPolynomial(
            n, tuple(_as_unipoly(C[n - i]) for i in range(n + 1)))
    values = []  # values[t][i] = a_i(t)
    for t in range(D + 1):
        M = [[entry(t) for entry in row] for row in sym]
        cp = charpoly_division_free(M)
        values.append([cp.coefficient(i) for i in range(n + 1)])
    coeffs = []
    for i in range(n + 1):
        coeffs.append(_interpolate_consecutive([row[i] for row in values]))
    return SpectralPolynomial(n, tuple(coeffs))


def _as_unipoly(c):
    return c if isinstance(c, UniPoly) else UniPoly.const(c)


def _interpolate_consecutive(samples):
    """Exact polynomial through integer values at nodes 0, 1, ..., len-1.

    Finite differences give the binomial-basis coefficients; the expansion
    back to monomials runs over Fractions and must land on integers.
    """
    diffs = list(samples)
    deltas = []
    for k in range(len(samples)):
        deltas.append(diffs[0])
        diffs = [diffs[j + 1] - diffs[j] for j in range(len(diffs) - 1)]
    # poly = sum_k deltas[k] * binomial(Y, k)
    result = UniPoly.zero()
    falling = UniPoly.const(1)  # Y (Y-1) ... (Y-k+1)
    factorial = 1
    for k, d in enumerate(deltas):
        if k:
            falling = falling * UniPoly({1: 1, 0: -(k - 1)})
            factorial *= k
        if d:
            result = result + falling.map_coefficients(
                lambda c, d=d, f=factorial: Fraction(c * d, f))
    if not result.is_integer():
        raise PrecisionError("interpolation of exact data missed integrality")
    return result.map_coefficients(lambda c: int(c))


def evaluate_y(P, y):
    """Substitute an exact rational for Y; returns a UniPoly in X."""
    y = Fraction(y)
    out = {}
    for i, a in enumerate(P.coeffs):
        v = a(y) if not a.is_zero() else 0
        if v:
            out[i] = v if isinstance(v, int) else (int(v) if v.denominator == 1 else v)
    return UniPoly(out)


@dataclass(frozen=True)
class HomogeneousPart:
    """Monomials of a fixed total degree d in (X, Y)."""

    degree: int
    terms: tuple  # sorted tuple of (xdeg, ydeg, coeff)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPart):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, self.terms))

    def format(self):
        parts = []
        for j, k, c in self.terms:
            piece = f"{c}"
            if j:
                piece += f"*X^{j}" if j > 1 else "*X"
            if k:
                piece += f"*Y^{k}" if k > 1 else "*Y"
            parts.append(piece)
        return " + ".join(parts).replace("+ -", "- ")


def tangent_cone(P):
    """Homogeneous part of minimal total degree of P (its cone at the origin)."""
    monos = list(P.monomials())
    if not monos:
        raise ValidationError("zero polynomial has no tangent cone")
    d = min(i + k for _, i, k in monos)
    terms = tuple(sorted((i, k, c) for c, i, k in monos if i + k == d))
    return HomogeneousPart(d, terms)


# ---------------------------------------------------------------------------
# Interpolation from sampled characteristic polynomials


@dataclass(frozen=True)
class InterpolationResult:
    polynomial: SpectralPolynomial
    snap_residual: Fraction  # max distance of any fitted coefficient from its integer


def interpolate_spectral_poly(samples, degree_bound, snap_tol=Fraction(1, 10 ** 6)):
    """Fit integer polynomials a_i(Y) through sampled values at exact nodes.

    samples maps a rational node y to the UniPoly in X observed there (all
    monic of a common X-degree).  Coefficients are fitted per X-power, then
    snapped to the nearest integer; the maximal snapping distance plus any
    cross-node mismatch is reported as the residual and must stay below
    snap_tol.

    Two strategies share this entry point:

    * digit decoding: when some node is an integer base b >= 3, the integer
      nearest to a_i(b) determines all coefficients by balanced base-b
      digits, provided every |coefficient| < b/2.  The candidate is kept
      only if it reproduces every node within tolerance, which on exact
      data of degree <= bound at >= bound+1 nodes can only pick the true
      interpolant.  This path tolerates per-node relative noise, which a
      plain linear solve amplifies catastrophically on geometric nodes.
    * exact Lagrange (Newton form) through the bound+1 nodes of smallest
      magnitude, remaining nodes used as verification.
    """
    nodes = {}
    for y, poly in samples.items():
        y = Fraction(y)
        if y in nodes:
            raise ValidationError(f"duplicate node {y}")
        nodes[y] = poly.map_coefficients(Fraction)
    if not nodes:
        raise ValidationError("no sample nodes")
    degrees = {poly.degree for poly in nodes.values()}
    if len(degrees) != 1:
        raise ValidationError("sample polynomials disagree on X-degree")
    n = degrees.pop()
    if n < 1:
        raise ValidationError("sample polynomials must have positive X-degree")

    decode_bases = sorted(y for y in nodes if y.denominator == 1 and y >= 3)
    for base in decode_bases:
        result = _decode_at_base(nodes, n, int(base), degree_bound, snap_tol)
        if result is not None:
            return result

    if len(nodes) < degree_bound + 1:
        raise ValidationError(
            f"insufficient nodes: need {degree_bound + 1}, got {len(nodes)}")
    return _lagrange_fit(nodes, n, degree_bound, snap_tol)


def _decode_at_base(nodes, n, base, degree_bound, snap_tol):
    """Balanced base-b digit decode from one node, verified against all others."""
    values = nodes[Fraction(base)]
    coeffs = []
    worst = Fraction(0)
    for i in range(n + 1):
        b = values.coefficient(i)
        B = _nearest_integer(b)
        dist = abs(Fraction(b) - B)
        if dist > min(snap_tol, Fraction(1, 4)):
            return None
        worst = max(worst, dist)
        digits = {}
        k = 0
        while B:
            d = ((B + base // 2) % base) - (base // 2)
            if d:
                digits[k] = d
            B = (B - d) // base
            k += 1
            if B and k > degree_bound:
                return None
        coeffs.append(UniPoly(digits))
    try:
        candidate = SpectralPolynomial(n, tuple(coeffs))
    except ValidationError:
        return None
    deviation = _verification_residual(candidate, nodes)
    if deviation > snap_tol:
        return None
    return InterpolationResult(candidate, max(worst, deviation))


def _lagrange_fit(nodes, n, degree_bound, snap_tol):
    order = sorted(nodes, key=lambda y: (abs(y), y))
    fit_nodes = order[: degree_bound + 1]
    rest = order[degree_bound + 1:]
    coeffs = []
    worst = Fraction(0)
    for i in range(n + 1):
        ys = fit_nodes
        vs = [Fraction(nodes[y].coefficient(i)) for y in ys]
        poly = _newton_interpolate(ys, vs)
        snapped = {}
        for k, c in poly.terms.items():
            c = Fraction(c)
            s = _nearest_integer(c)
            worst = max(worst, abs(c - s))
            if s:
                snapped[k] = s
        coeffs.append(UniPoly(snapped))
    try:
        result = SpectralPolynomial(n, tuple(coeffs))
    except ValidationError as exc:
        raise PrecisionError(f"snapped interpolant is not a spectral polynomial: {exc}")
    if rest:
        worst = max(worst, _verification_residual(result, {y: nodes[y] for y in rest}))
    if worst > snap_tol:
        raise PrecisionError(
            f"snapping residual {float(worst):.3g} above tolerance "
            f"{float(snap_tol):.3g}; raise the working precision upstream")
    return InterpolationResult(result, worst)


def _verification_residual(P, nodes):
    """Max relative deviation of P's values from the samples at the nodes."""
    worst = Fraction(0)
    for y, observed in nodes.items():
        predicted = evaluate_y(P, y)
        for i in range(P.n + 1):
            e = Fraction(predicted.coefficient(i))
            o = Fraction(observed.coefficient(i))
            dev = abs(o - e) / max(Fraction(1), abs(e))
            worst = max(worst, dev)
    return worst


def _newton_interpolate(xs, vs):
    """Exact Newton divided-difference interpolation at distinct rational nodes."""
    k = len(xs)
    table = list(vs)
    coefs = [table[0]]
    for level in range(1, k):
        table = [
            (table[j + 1] - table[j]) / (xs[j + level] - xs[j])
            for j in range(k - level)
        ]
        coefs.append(table[0])
    poly = UniPoly.zero()
    basis = UniPoly.const(Fraction(1))
    for level, c in enumerate(coefs):
        if level:
            basis = basis * UniPoly({1: Fraction(1), 0: -Fraction(xs[level - 1])})
        if c:
            poly = poly + basis * c
    return poly


def _nearest_integer(x):
    x = Fraction(x)
    fl = x.numerator // x.denominator
    rem = x - fl
    return fl + 1 if rem > Fraction(1, 2) else (fl if rem < Fraction(1, 2) else fl + (fl % 2))


# ---------------------------------------------------------------------------
# Text format: header "spoly n=<n>", then one monomial per line "c j k"
# meaning c * X^j * Y^k, sorted by (j descending, k ascending).


def spectral_poly_to_text(P):
    lines = [f"spoly n={P.n}"]
    monos = sorted(P.monomials(), key=lambda t: (-t[1], t[2]))
    for c, j, k in monos:
        lines.append(f"{c} {j} {k}")
    return "\n".join(lines) + "\n"


def spectral_poly_from_text(text):
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows or not rows[0].startswith("spoly n="):
        raise ValidationError("missing 'spoly n=<n>' header")
    n = int(rows[0].split("=", 1)[1])
    coeffs = [dict() for _ in range(n + 1)]
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValidationError(f"bad monomial line {ln!r}")
        c, j, k = int(parts[0]), int(parts[1]), int(parts[2])
        if not 0 <= j <= n:
            raise ValidationError(f"X-degree {j} outside 0..{n}")
        if k in coeffs[j]:
            raise ValidationError(f"duplicate monomial X^{j} Y^{k}")
        coeffs[j][k] = c
    return SpectralPolynomial(n, tuple(UniPoly(d) for d in coeffs))


def write_spectral_poly(P, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(spectral_poly_to_text(P))


def read_spectral_poly(path):
    with open(path, encoding="utf-8") as fh:
        return spectral_poly_from_text(fh.read())
