"""Arbitrary-precision spectra of level Laplacians and their recovery.

The block operator attached to a diffusion pair acts as one weighted-graph
Laplacian per integer level r, with edge weights q^(label*(1-r)); its
spectrum is the union of the level spectra (each level reported once —
the function-space multiplicity is collapsed, since recovery only needs
the level multisets).  This module simulates windows of levels, clusters
a simulated union back into per-level multisets using two samples at
distinct primes, rebuilds the spectral polynomial from the clusters, and
runs the first-order perturbation experiment that separates isospectral
graph pairs.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from math import log

from mpmath import mp

# Exact decimal serialization of high-precision values routinely exceeds
# the interpreter's default int<->str conversion guard.
if sys.get_int_max_str_digits() < 2_000_000:
    sys.set_int_max_str_digits(2_000_000)

from .errors import AmbiguousClusteringError, PrecisionError, ValidationError
from .graphs import edge_set_laplacian, level_laplacian, seminorm_sq
from .polynomials import interpolate_spectral_poly
from .unipoly import UniPoly


# ---------------------------------------------------------------------------
# Exact conversions between mpf, Fraction, and decimal strings


def mpf_to_fraction(x):
    sign, man, exp, _ = x._mpf_
    man = int(man)
    if man == 0:
        if exp != 0:
            raise ValidationError("non-finite value")
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


def fraction_to_mpf(f):
    """Exact when the reduced denominator is a power of two."""
    f = Fraction(f)
    num, den = f.numerator, f.denominator
    shift = den.bit_length() - 1
    if den != 1 << shift:
        raise ValidationError(f"{f} is not a dyadic rational")
    with mp.workprec(max(abs(num).bit_length(), 8)):
        return mp.ldexp(mp.mpf(num), -shift)


def exact_decimal(x):
    """Finite decimal string exactly equal to the binary float x."""
    sign, man, exp, _ = x._mpf_
    man = int(man)
    if man == 0:
        return "0"
    prefix = "-" if sign else ""
    if exp >= 0:
        return prefix + str(man << exp)
    digits = str(man * 5 ** (-exp))
    if len(digits) <= -exp:
        digits = "0" * (-exp - len(digits) + 1) + digits
    point = len(digits) + exp
    return prefix + digits[:point] + "." + digits[point:]


def parse_exact_decimal(s):
    f = Fraction(s)
    if f == 0:
        return mp.mpf(0)
    den = f.denominator
    if den & (den - 1) == 0:
        # every string written by exact_decimal lands here (odd mantissas
        # leave a power-of-two denominator after reduction)
        return fraction_to_mpf(f)
    return _parse_rounded(f)


def _parse_rounded(f):
    bits = abs(f.numerator).bit_length() + f.denominator.bit_length() + 16
    with mp.workprec(bits):
        return mp.mpf(f.numerator) / mp.mpf(f.denominator)


# ---------------------------------------------------------------------------
# Jacobi eigensolver


MAX_JACOBI_SWEEPS = 60


def sym_eigs(M, precision_bits, want_vectors=False):
    """Eigenvalues (ascending) of a symmetric exact or float matrix.

    Cyclic Jacobi rotations at precision_bits plus guard bits; converges
    when the off-diagonal Frobenius norm drops below 2^-precision_bits
    times the matrix norm, comfortably inside the documented tolerance of
    2^(-precision_bits/2).  The eigenvalue sum is checked against the
    trace.  With want_vectors=True returns (values, vectors), vectors[i]
    being the unit eigenvector for values[i].
    """
    n = len(M)
    for i, row in enumerate(M):
        if len(row) != n:
            raise ValidationError("matrix is not square")
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise ValidationError("matrix is not symmetric")
    if n == 0:
        return ([], []) if want_vectors else []
    wp = precision_bits + 64
    with mp.workprec(wp):
        A = [[_entry_to_mpf(M[i][j]) for j in range(n)] for i in range(n)]
        V = [[mp.mpf(1 if i == j else 0) for j in range(n)] for i in range(n)]
        fro = mp.sqrt(mp.fsum(A[i][j] ** 2 for i in range(n) for j in range(n)))
        if fro == 0:
            vals = [mp.mpf(0)] * n
            vecs = [tuple(V[i]) for i in range(n)]
            return (vals, vecs) if want_vectors else vals
        stop = fro * mp.ldexp(1, -precision_bits)
        converged = False
        for _ in range(MAX_JACOBI_SWEEPS):
            off = mp.sqrt(mp.fsum(A[i][j] ** 2
                                  for i in range(n) for j in range(i + 1, n)) * 2)
            if off <= stop:
                converged = True
                break
            skip = mp.ldexp(fro, -wp)
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p][q]
                    if abs(apq) <= skip:
                        continue
                    tau = (A[q][q] - A[p][p]) / (2 * apq)
                    if tau >= 0:
                        t = 1 / (tau + mp.sqrt(1 + tau * tau))
                    else:
                        t = -1 / (-tau + mp.sqrt(1 + tau * tau))
                    c = 1 / mp.sqrt(t * t + 1)
                    s = t * c
                    App, Aqq = A[p][p], A[q][q]
                    A[p][p] = App - t * apq
                    A[q][q] = Aqq + t * apq
                    A[p][q] = A[q][p] = mp.mpf(0)
                    for k in range(n):
                        if k in (p, q):
                            continue
                        akp, akq = A[k][p], A[k][q]
                        A[k][p] = A[p][k] = c * akp - s * akq
                        A[k][q] = A[q][k] = s * akp + c * akq
                    for k in range(n):
                        vkp, vkq = V[k][p], V[k][q]
                        V[k][p] = c * vkp - s * vkq
                        V[k][q] = s * vkp + c * vkq
        if not converged:
            off = mp.sqrt(mp.fsum(A[i][j] ** 2
                                  for i in range(n) for j in range(i + 1, n)) * 2)
            if off > stop:
                raise PrecisionError(
                    f"Jacobi iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps")
        order = sorted(range(n), key=lambda i: A[i][i])
        vals = [A[i][i] for i in order]
        trace = mp.fsum(_entry_to_mpf(M[i][i]) for i in range(n))
        if abs(mp.fsum(vals) - trace) > mp.ldexp(fro, -(precision_bits // 2)):
            raise PrecisionError("eigenvalue sum drifted from the trace; "
                                 "precision too low for this matrix")
        if want_vectors:
            vecs = [tuple(V[k][i] for k in range(n)) for i in order]
            return vals, vecs
        return vals


def _entry_to_mpf(x):
    if isinstance(x, int):
        return mp.mpf(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return mp.mpf(x.numerator)
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


# ---------------------------------------------------------------------------
# Spectrum simulation


def is_prime_power(q):
    if q < 2:
        return False
    p = None
    m = q
    for d in range(2, q + 1):
        if d * d > m:
            p = m if p is None else p
            break
        if m % d == 0:
            p = d
            break
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class SpectrumSample:
    """A window of level spectra: n values per level, globally sorted."""

    q: int
    r_min: int
    r_max: int
    precision_bits: int
    values: tuple  # ascending mpf values, one level-spectrum per level

    @property
    def width(self):
        return self.r_max - self.r_min + 1

    @property
    def n_per_level(self):
        if len(self.values) % self.width:
            raise ValidationError("value count is not a multiple of the window width")
        return len(self.values) // self.width

    def zero_values(self):
        return [v for v in self.values if self._is_zero(v)]

    def nonzero_values(self):
        return [v for v in self.values if not self._is_zero(v)]

    def _is_zero(self, v):
        return v == 0

    @property
    def zeros_per_level(self):
        z = len(self.zero_values())
        if z % self.width:
            raise ValidationError("zero count is not a multiple of the window width")
        return z // self.width


def smallest_eigenvalue_bound(M):
    """Positive rational lower bound on the least nonzero eigenvalue of a
    rational symmetric PSD matrix: the nonzero eigenvalues of an integer
    PSD matrix have an integer product >= 1, and each is at most n*max|entry|.
    """
    n = len(M)
    s = 1
    for row in M:
        for x in row:
            d = Fraction(x).denominator
            s = s * d // _gcd(s, d)
    max_entry = max((abs(Fraction(x) * s) for row in M for x in row), default=Fraction(0))
    if max_entry == 0:
        return Fraction(1)
    cap = Fraction(int(n) * int(max_entry))
    return Fraction(1, s) / cap ** (n - 1)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def simulate_spectrum(dp, q, r_min, r_max, precision_bits=512, auto_elevate=True):
    """Union of the level spectra for r in [r_min, r_max], each level once.

    The working precision is raised automatically so that every level's
    zero eigenvalues are separated from its smallest genuine eigenvalue
    (the dynamic range q^(max_label*(1-r_min)) can dwarf any fixed
    precision); precision_bits is the floor, and the effective precision
    is recorded on the sample.  With auto_elevate=False the requested
    precision is used as-is and inadequacy raises PrecisionError.
    """
    if not is_prime_power(q):
        raise ValidationError(f"q={q} is not a prime power")
    if not r_min <= 1 <= r_max:
        raise ValidationError("window must satisfy r_min <= 1 <= r_max")
    graph = dp.graph
    n = graph.n
    b0 = graph.component_count()
    levels = list(range(r_min, r_max + 1))
    matrices = {r: level_laplacian(dp, q, r) for r in levels}
    bounds = {r: smallest_eigenvalue_bound(matrices[r]) for r in levels}
    wp = precision_bits
    if auto_elevate:
        for r in levels:
            max_entry = max(abs(x) for row in matrices[r] for x in row)
            range_bits = (_frac_bits(max_entry * n) + _frac_bits(1 / bounds[r])
                          if max_entry else 8)
            wp = max(wp, precision_bits + range_bits + 64)
    values = []
    for r in levels:
        eigs = sym_eigs(matrices[r], wp)
        thresh = bounds[r] / 2
        zeros = [v for v in eigs if abs(mpf_to_fraction(v)) < thresh]
        nonzeros = [v for v in eigs if abs(mpf_to_fraction(v)) >= thresh]
        if len(zeros) != b0:
            raise PrecisionError(
                f"level {r}: found {len(zeros)} numerically zero eigenvalues, "
                f"expected {b0}; precision too low for the dynamic range "
                f"q^{{max_label*(1-r_min)}}")
        if any(mpf_to_fraction(v) <= -thresh for v in eigs):
            raise PrecisionError(f"level {r}: negative eigenvalue beyond tolerance")
        values.extend([mp.mpf(0)] * b0)
        values.extend(nonzeros)
    values.sort()
    return SpectrumSample(q, r_min, r_max, wp, tuple(values))


def _frac_bits(f):
    f = Fraction(f)
    return max(abs(f.numerator).bit_length(), f.denominator.bit_length())


# ---------------------------------------------------------------------------
# Clustering: union of levels -> per-level multisets


@dataclass(frozen=True)
class ClusterAssignment:
    """Per-level value multisets for one sample, plus gap diagnostics."""

    q: int
    precision_bits: int
    levels: dict  # r -> ascending tuple of values (zeros re-attached)
    min_intercluster_gap: float
    max_intracluster_gap: float

    def level(self, r):
        return self.levels[r]


def cluster_and_assign(samples, exponent_tol=0.25, constant_tol=0.18):
    """Split >= 2 same-window samples at distinct primes into level multisets.

    The level-1 multiset is prime-independent, so it is extracted by
    cross-sample value matching.  The remaining values are matched across
    primes: a value pair belonging to the same eigenvalue branch and level
    satisfies v1/v2 = (q1/q2)^e for an integer e = (1-r)*s, with a shared
    leading constant; grouping by constant and factoring each group's
    exponents into complete progressions s*(1-r) identifies the levels.
    Inconsistencies raise AmbiguousClusteringError - the caller's move is
    to retry with a larger prime.
    """
    if len(samples) < 2:
        raise ValidationError("need at least two samples at distinct primes")
    qs = [s.q for s in samples]
    if len(set(qs)) != len(qs):
        raise ValidationError("samples must use distinct primes")
    window = {(s.r_min, s.r_max) for s in samples}
    if len(window) != 1:
        raise ValidationError("samples must share the level window")
    r_min, r_max = window.pop()
    ns = {s.n_per_level for s in samples}
    if len(ns) != 1:
        raise ValidationError("samples disagree on matrix size")
    n = ns.pop()
    b0s = {s.zeros_per_level for s in samples}
    if len(b0s) != 1:
        raise AmbiguousClusteringError("samples disagree on zero counts")
    b0 = b0s.pop()
    k = n - b0  # nonzero values per level

    tol1 = mp.ldexp(1, -min(s.precision_bits for s in samples) // 3)
    nonzero = [sorted(s.nonzero_values()) for s in samples]

    # Level 1 is the prime-independent multiset.
    shared_flags = []
    for i, s in enumerate(samples):
        flags = [True] * len(nonzero[i])
        for j, other in enumerate(samples):
            if j == i:
                continue
            matched = _match_multisets(nonzero[i], nonzero[j], tol1)
            flags = [f and (m is not None) for f, m in zip(flags, matched)]
        shared_flags.append(flags)
    level_one = []
    rest = []
    for i in range(len(samples)):
        ones = [v for v, f in zip(nonzero[i], shared_flags[i]) if f]
        others = [v for v, f in zip(nonzero[i], shared_flags[i]) if not f]
        if len(ones) != k:
            raise AmbiguousClusteringError(
                f"sample q={samples[i].q}: expected {k} shared level-1 values, "
                f"found {len(ones)}; retry with a larger prime")
        level_one.append(ones)
        rest.append(others)

    out = []
    other_levels = [r for r in range(r_min, r_max + 1) if r != 1]
    for i, s in enumerate(samples):
        levels = {1: tuple(level_one[i])}
        if len(other_levels) == 1:
            levels[other_levels[0]] = tuple(rest[i])
        elif other_levels:
            mate = max((j for j in range(len(samples)) if j != i),
                       key=lambda j: samples[j].q)
            tags = _tag_exponents(rest[i], samples[i].q, rest[mate],
                                  samples[mate].q, exponent_tol, constant_tol)
            assigned = _assign_levels(tags, other_levels, constant_tol)
            for r in other_levels:
                vals = assigned.get(r, [])
                if len(vals) != k:
                    raise AmbiguousClusteringError(
                        f"sample q={s.q}: level {r} received {len(vals)} values, "
                        f"expected {k}")
                levels[r] = tuple(sorted(vals))
        for r in levels:
            levels[r] = tuple(sorted(list(levels[r]) + [mp.mpf(0)] * b0))
        inter, intra = _gap_diagnostics(levels, nonzero[i])
        out.append(ClusterAssignment(s.q, s.precision_bits, levels, inter, intra))
    return out


def _match_multisets(a, b, rel_tol):
    """Greedy two-pointer matching of ascending lists within relative tol.

    Returns, for each element of a, the matched index in b or None.
    """
    out = [None] * len(a)
    used = [False] * len(b)
    j = 0
    for i, v in enumerate(a):
        while j < len(b) and (used[j] or (b[j] < v and not _close(b[j], v, rel_tol))):
            j += 1
        if j < len(b) and _close(b[j], v, rel_tol):
            out[i] = j
            used[j] = True
            j += 1
    return out


def _close(a, b, rel_tol):
    return abs(a - b) <= rel_tol * max(abs(a), abs(b))


def _tag_exponents(values, q_self, mates, q_mate, exponent_tol, constant_tol):
    """Tag each value with (e, c) where v = c * q_self^e.

    Values of the same hidden pair sort identically at both primes once q
    exceeds the spread of the branch constants (the exponent dominates the
    ordering), so the two ascending lists correspond positionally; each
    pair then determines its integer scaling exponent e and constant c.
    """
    if len(values) != len(mates):
        raise AmbiguousClusteringError("samples disagree on value counts")
    lq_self, lq_mate = log(q_self), log(q_mate)
    tags = []
    for v, w in zip(sorted(values), sorted(mates)):
        e_real = float((mp.log(v) - mp.log(w)) / (lq_self - lq_mate))
        e = round(e_real)
        if e == 0 or abs(e_real - e) > exponent_tol:
            raise AmbiguousClusteringError(
                f"cross-prime pair {mp.nstr(v, 8)} / {mp.nstr(w, 8)} has "
                f"non-integer scaling exponent {e_real:.4f}; retry with a "
                f"larger prime")
        c_self = v / mp.power(q_self, e)
        c_mate = w / mp.power(q_mate, e)
        if abs(c_self - c_mate) > constant_tol * max(c_self, c_mate):
            raise AmbiguousClusteringError(
                f"cross-prime pair {mp.nstr(v, 8)} / {mp.nstr(w, 8)} has "
                f"inconsistent branch constants; retry with a larger prime")
        tags.append((v, e, c_self))
    return tags


def _assign_levels(tags, other_levels, constant_tol):
    """Group tags by branch constant, factor exponents into progressions.

    Each eigenvalue branch contributes one value per level, with exponents
    scale*(1-r); within a constant group the exponent multiset must be a
    disjoint union of such progressions.  When one exponent slot holds
    values from several branches, the value with the constant nearest the
    branch seed is taken, which resolves collisions whenever the branch
    constants are separated beyond the finite-prime corrections.
    """
    multipliers = sorted(1 - r for r in other_levels)
    tags = sorted(tags, key=lambda t: t[2])
    groups = []
    for t in tags:
        if groups and t[2] <= groups[-1][-1][2] * (1 + 2 * constant_tol):
            groups[-1].append(t)
        else:
            groups.append([t])
    assigned = {}
    for group in groups:
        pool = sorted(group, key=lambda t: t[1])
        while pool:
            e0, c0 = pool[0][1], pool[0][2]
            t0 = multipliers[0]
            if e0 % t0:
                raise AmbiguousClusteringError(
                    f"exponent {e0} incompatible with window multiplier {t0}")
            scale = e0 // t0
            for t_mult in multipliers:
                want = scale * t_mult
                slot = [idx for idx, tag in enumerate(pool) if tag[1] == want]
                if not slot:
                    raise AmbiguousClusteringError(
                        f"branch with scale {scale}: no value with exponent {want}")
                idx = min(slot, key=lambda idx: abs(pool[idx][2] - c0))
                assigned.setdefault(1 - t_mult, []).append(pool[idx][0])
                pool.pop(idx)
    return assigned


def _gap_diagnostics(levels, nonzero_sorted):
    """Min gap ratio between adjacent cross-level values, max within a level."""
    owner = {}
    for r, vals in levels.items():
        for v in vals:
            if v != 0:
                owner.setdefault(float(v), r)
    inter = float("inf")
    intra = 1.0
    ordered = [float(v) for v in nonzero_sorted]
    for a, b in zip(ordered, ordered[1:]):
        ratio = b / a if a else float("inf")
        if owner.get(a) == owner.get(b):
            intra = max(intra, ratio)
        else:
            inter = min(inter, ratio)
    return inter, intra


# ---------------------------------------------------------------------------
# Recovery: clusters -> spectral polynomial


def recover_spectral_poly(assignment, q, degree_bound,
                          snap_tol=Fraction(1, 10 ** 6), min_levels=None):
    """Rebuild the integer spectral polynomial from one cluster assignment.

    Per level r the monic polynomial with the cluster values as roots is
    formed (signed elementary symmetric functions), attached to the node
    y = q^(1-r), and handed to interpolate_spectral_poly.  By default at
    least degree_bound+1 levels are required, matching the blind
    interpolation bound; callers that rely on integer digit decoding (the
    game solver) may lower the gate via min_levels.
    """
    needed = degree_bound + 1 if min_levels is None else min_levels
    if len(assignment.levels) < needed:
        raise ValidationError(
            f"insufficient levels: need {needed}, have {len(assignment.levels)}")
    samples = {}
    wp = assignment.precision_bits + 64
    for r, values in assignment.levels.items():
        y = Fraction(q) ** (1 - r)
        samples[y] = _monic_from_roots(values, wp)
    return interpolate_spectral_poly(samples, degree_bound, snap_tol)


def _monic_from_roots(roots, wp):
    """Exact-rational UniPoly (X - r1)...(X - rk) from mpf roots."""
    coeffs = [Fraction(1)]
    for root in roots:
        fr = mpf_to_fraction(root) if not isinstance(root, (int, Fraction)) else Fraction(root)
        coeffs = [Fraction(0)] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= fr * coeffs[i + 1]
    return UniPoly({i: c for i, c in enumerate(coeffs) if c})


# ---------------------------------------------------------------------------
# Matrix perturbation experiment


@dataclass(frozen=True)
class SeparationReport:
    """First-order eigenvalue response of U(C) + eps*U(C_i) for i = 1, 2."""

    epsilon: object
    common_edges: tuple
    extra_edges: tuple  # (C_1, C_2)
    spectra: tuple  # (eigenvalues of L_eps_1, eigenvalues of L_eps_2)
    hausdorff_distance: object
    separating_vector: tuple | None
    separating_seminorms: tuple | None
    predictions: tuple  # per i: ascending first-order predictions
    max_prediction_error: tuple  # per i


def separation_experiment(g1, g2, epsilon, precision_bits=192):
    """Perturb the common-edge Laplacian toward each graph and compare.

    C = E1 & E2, C_i = E_i - C.  For each eigenvalue group of U(C) the
    perturbation is diagonalized inside the eigenspace, giving first-order
    predictions lambda + eps*mu that match the true eigenvalues of
    U(C) + eps*U(C_i) up to O(eps^2).  A separating eigenvector (one whose
    two seminorms differ) certifies that the perturbed spectra split.
    """
    if g1.n != g2.n:
        raise ValidationError("graphs must share the vertex range")
    n = g1.n
    E1, E2 = set(g1.edges), set(g2.edges)
    C = sorted(E1 & E2)
    C1 = sorted(E1 - E2)
    C2 = sorted(E2 - E1)
    if not C1 and not C2:
        raise ValidationError("graphs are equal: nothing to separate")
    eps_f = Fraction(epsilon)
    if eps_f <= 0:
        raise ValidationError("epsilon must be positive")
    UC = edge_set_laplacian(n, C)
    U1 = edge_set_laplacian(n, C1)
    U2 = edge_set_laplacian(n, C2)
    wp = precision_bits + 64
    with mp.workprec(wp):
        base_vals, base_vecs = sym_eigs(UC, precision_bits, want_vectors=True)
        eps = mp.mpf(eps_f.numerator) / mp.mpf(eps_f.denominator)
        group_tol = mp.ldexp(max(abs(v) for v in base_vals) + 1, -(precision_bits // 2))
        groups = _group_degenerate(base_vals, group_tol)
        predictions = []
        for U in (U1, U2):
            preds = []
            for idxs in groups:
                lam = base_vals[idxs[0]]
                basis = [base_vecs[i] for i in idxs]
                W = [[_quadratic_form(U, basis[a], basis[b]) for b in range(len(idxs))]
                     for a in range(len(idxs))]
                W = [[(W[a][b] + W[b][a]) / 2 for b in range(len(idxs))]
                     for a in range(len(idxs))]
                for mu in sym_eigs(W, precision_bits):
                    preds.append(lam + eps * mu)
            predictions.append(sorted(preds))
        spectra = []
        for U in (U1, U2):
            pert = [[mp.mpf(UC[i][j]) + eps * U[i][j] for j in range(n)]
                    for i in range(n)]
            spectra.append(sym_eigs(pert, precision_bits))
        errors = tuple(
            max(abs(a - p) for a, p in zip(spectra[i], predictions[i]))
            for i in range(2))
        hausdorff = _hausdorff(spectra[0], spectra[1])
        # A separating eigenvector exists iff U(C_1) - U(C_2) has a nonzero
        # compression to some eigenspace of U(C); searching those
        # compressions is complete, unlike scanning one eigenbasis.
        sep_vec = sep_norms = None
        sep_tol = mp.ldexp(1, -(precision_bits // 4))
        Ud = [[U1[i][j] - U2[i][j] for j in range(n)] for i in range(n)]
        best = sep_tol
        for idxs in groups:
            basis = [base_vecs[i] for i in idxs]
            k = len(idxs)
            Wd = [[_quadratic_form(Ud, basis[a], basis[b]) for b in range(k)]
                  for a in range(k)]
            Wd = [[(Wd[a][b] + Wd[b][a]) / 2 for b in range(k)] for a in range(k)]
            mus, ws = sym_eigs(Wd, precision_bits, want_vectors=True)
            for mu, w in zip(mus, ws):
                if abs(mu) > best:
                    best = abs(mu)
                    sep_vec = tuple(
                        mp.fsum(w[a] * basis[a][i] for a in range(k))
                        for i in range(n))
        if sep_vec is not None:
            sep_norms = (seminorm_sq(sep_vec, C1), seminorm_sq(sep_vec, C2))
    return SeparationReport(
        epsilon=eps_f,
        common_edges=tuple(C),
        extra_edges=(tuple(C1), tuple(C2)),
        spectra=(tuple(spectra[0]), tuple(spectra[1])),
        hausdorff_distance=hausdorff,
        separating_vector=sep_vec,
        separating_seminorms=sep_norms,
        predictions=(tuple(predictions[0]), tuple(predictions[1])),
        max_prediction_error=errors,
    )


def prediction_error_ratio(g1, g2, epsilon, precision_bits=192):
    """Max first-order error at eps divided by the error at eps/2.

    Analytic perturbation makes the first-order error O(eps^2), so the
    ratio approaches 4 from below as eps shrinks.
    """
    eps = Fraction(epsilon)
    full = separation_experiment(g1, g2, eps, precision_bits)
    half = separation_experiment(g1, g2, eps / 2, precision_bits)
    err_full = max(full.max_prediction_error)
    err_half = max(half.max_prediction_error)
    if err_half == 0:
        return full, half, float("inf")
    return full, half, err_full / err_half


def _group_degenerate(vals, tol):
    groups = [[0]]
    for i in range(1, len(vals)):
        if abs(vals[i] - vals[groups[-1][0]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _quadratic_form(U, u, v):
    n = len(U)
    return mp.fsum(u[i] * U[i][j] * v[j] for i in range(n) for j in range(n) if U[i][j])


def _hausdorff(a, b):
    d = mp.mpf(0)
    for x in a:
        d = max(d, min(abs(x - y) for y in b))
    for y in b:
        d = max(d, min(abs(x - y) for x in a))
    return d


# ---------------------------------------------------------------------------
# Text format: header "spectrum q=<q> rmin=<r> rmax=<r> prec=<bits>",
# then one exact decimal value per line, ascending.


def spectrum_to_text(sample):
    lines = [f"spectrum q={sample.q} rmin={sample.r_min} rmax={sample.r_max} "
             f"prec={sample.precision_bits}"]
    for v in sample.values:
        lines.append(exact_decimal(v))
    return "\n".join(lines) + "\n"


def spectrum_from_text(text):
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows or not rows[0].startswith("spectrum "):
        raise ValidationError("missing spectrum header")
    fields = dict(tok.split("=") for tok in rows[0].split()[1:])
    try:
        q = int(fields["q"])
        r_min = int(fields["rmin"])
        r_max = int(fields["rmax"])
        prec = int(fields["prec"])
    except KeyError as exc:
        raise ValidationError(f"spectrum header missing field {exc}")
    values = tuple(parse_exact_decimal(ln) for ln in rows[1:])
    return SpectrumSample(q, r_min, r_max, prec, values)


def write_spectrum(sample, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(spectrum_to_text(sample))


def read_spectrum(path):
    with open(path, encoding="utf-8") as fh:
        return spectrum_from_text(fh.read())
