"""Bivariate (Tratnik) Racah polynomials and their difference operators.

Variables live on the triangle {0 <= x1 <= x2 <= N}, degrees on
{n1 + n2 <= N}; both sets have (N+1)(N+2)/2 points and are indexed
lexicographically.  R2 is a product of two univariate Racah polynomials,
the first in x1 with top index x2, the second in x2 - n1.
"""
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .errors import PoleError, ValidityError
from .exactnum import as_rational, pochhammer, racah_r
from .gridop import StencilOperator, degree_set, materialize, triangle
from .racah1 import SU11Weights, betas_from_nu, kappa


@dataclass(frozen=True)
class RacahParams2:
    beta0: Fraction
    beta1: Fraction
    beta2: Fraction
    beta3: Fraction
    N: int

    def __post_init__(self):
        for name in ("beta0", "beta1", "beta2", "beta3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if int(self.N) != self.N or self.N < 0:
            raise ValidityError("N must be a nonnegative integer")
        object.__setattr__(self, "N", int(self.N))
        for x in range(self.N + 1):
            for shift in (-1, 0, 1):
                if 2 * x + self.beta1 + shift == 0:
                    raise ValidityError(f"2x1+beta1{shift:+d} vanishes at x1={x}")
                if 2 * x + self.beta2 + shift == 0:
                    raise ValidityError(f"2x2+beta2{shift:+d} vanishes at x2={x}")

    @property
    def betas(self):
        return (self.beta0, self.beta1, self.beta2, self.beta3)

    def validate_pack(self, normalization="corrected"):
        """Raise ValidityError unless the R2 normalizer is pole-free."""
        for n in range(self.N + 1):
            if not normalizer(n, 0, self, normalization) or not normalizer(0, n, self, normalization):
                raise ValidityError(f"R2 normalizer vanishes at degree {n} ({normalization})")
        return self


def params_from_nu(w, N):
    if w.nu4 is None:
        raise ValueError("bivariate packs need four weights")
    return RacahParams2(*betas_from_nu(w.values), N)


# --------------------------------------------------------------------------
# evaluation


def normalizer(n1, n2, p, normalization="corrected"):
    """Denominator that makes R2 equal 1 at the origin of the dual grid.

    corrected: (-N)_s (-N-b0)_s (b2-b1)_n1 (b3-b2)_n2 with s = n1+n2.  With
    it R2 is exactly self-dual and the degree-direction equations need no
    extra gauge.  "printed" uses (-N+b0)_s and (b3-b1)_n2 instead.
    """
    b0, b1, b2, b3 = p.betas
    N = p.N
    s = n1 + n2
    if normalization == "corrected":
        return pochhammer(-N, s) * pochhammer(-N - b0, s) * pochhammer(b2 - b1, n1) * pochhammer(b3 - b2, n2)
    if normalization == "printed":
        return pochhammer(-N, s) * pochhammer(-N + b0, s) * pochhammer(b2 - b1, n1) * pochhammer(b3 - b1, n2)
    raise ValueError(f"unknown normalization {normalization!r}")


def racah2_factors(n1, n2, x1, x2, p):
    """The two univariate factors of R2 (before normalization)."""
    b0, b1, b2, b3 = p.betas
    N = p.N
    f1 = racah_r(n1, b1 - b0 - 1, b2 - b1 - 1, -x2 - 1, b1 + x2, x1)
    f2 = racah_r(n2, 2 * n1 + b2 - b0 - 1, b3 - b2 - 1, n1 - N - 1, N + n1 + b2, x2 - n1)
    return f1, f2


def racah2_eval(d, g, p, normalization="corrected"):
    """R2(n1, n2; x1, x2; beta; N).

    ``d`` = (n1, n2), ``g`` = (x1, x2); x may be any rationals (the
    (m; y) family evaluates off the integer grid).
    """
    n1, n2 = d
    x1, x2 = g
    if n1 < 0 or n2 < 0 or n1 + n2 > p.N:
        raise ValueError(f"degree {d} outside n1+n2 <= {p.N}")
    f1, f2 = racah2_factors(n1, n2, x1, x2, p)
    den = normalizer(n1, n2, p, normalization)
    if not den:
        raise PoleError(f"R2 normalizer vanishes at degree {d}")
    return f1 * f2 / den


@lru_cache(maxsize=64)
def racah2_table(p, normalization="corrected"):
    """Rows indexed by degree_set(N), columns by triangle(N).

    Cached per pack (packs are immutable); rows are tuples.
    """
    return tuple(
        tuple(racah2_eval(d, g, p, normalization) for g in triangle(p.N)) for d in degree_set(p.N)
    )


# --------------------------------------------------------------------------
# coefficient functions


def C1_plus(x1, x2, p):
    """C^(1)_(1,0)."""
    b0, b1, b2, _ = p.betas
    num = (x1 + b1 - b0) * (x1 + b1) * (x2 + x1 + b2) * (x2 - x1)
    den = (2 * x1 + b1) * (2 * x1 + b1 + 1)
    return Fraction(num) / den


def C2_11(x1, x2, p):
    b0, b1, b2, b3 = p.betas
    N = p.N
    num = (
        (x1 + b1) * (x1 + b1 - b0) * (x2 + x1 + b2) * (x2 + x1 + b2 + 1)
        * (N - x2) * (N + x2 + b3)
    )
    den = (2 * x1 + b1) * (2 * x1 + b1 + 1) * (2 * x2 + b2) * (2 * x2 + b2 + 1)
    return Fraction(num) / den


def C2_10(x1, x2, p, literal=False):
    """C^(2)_(1,0).  ``literal`` keeps the printed factor (x2+x2+beta2)."""
    b0, b1, b2, b3 = p.betas
    N = p.N
    pair = (x2 + x2 + b2) if literal else (x2 + x1 + b2)
    num = (x1 + b1) * (x1 + b1 - b0) * (x2 - x1) * pair
    num *= 2 * x2 * (x2 + b2) + 2 * N * (N + b3) + (b2 + 1) * (b3 - 1)
    den = (2 * x1 + b1) * (2 * x1 + b1 + 1) * (2 * x2 + b2 - 1) * (2 * x2 + b2 + 1)
    return Fraction(num) / den


def C2_01(x1, x2, p):
    b0, b1, b2, b3 = p.betas
    N = p.N
    num = (2 * x1 * (x1 + b1) + (b0 + 1) * (b1 - 1)) * (x2 + x1 + b2)
    num *= (x2 - x1 + b2 - b1) * (N - x2) * (N + x2 + b3)
    den = (2 * x1 + b1 - 1) * (2 * x1 + b1 + 1) * (2 * x2 + b2) * (2 * x2 + b2 + 1)
    return Fraction(num) / den


def inversion1(f, p):
    """I1: f(x1, x2) -> f(-x1 - beta1, x2)."""
    return lambda x1, x2: f(-x1 - p.beta1, x2)


def inversion2(f, p):
    """I2: f(x1, x2) -> f(x1, -x2 - beta2)."""
    return lambda x1, x2: f(x1, -x2 - p.beta2)


def level2_offsets(include_diagonal_pairs=True):
    """Offsets of the second-level operator.

    With ``include_diagonal_pairs`` the (1,1)/(-1,-1) shifts are kept (the
    printed C^(2)_(1,1) is nonzero); without them only |j+k| <= 1 remains.
    """
    offs = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
    if include_diagonal_pairs:
        offs += [(1, 1), (-1, -1)]
    return tuple(sorted(offs))


def coefficient_family(level, p, literal_c10=False):
    """Map offset -> coefficient function (x1, x2) for level 1 or 2.

    Only the printed representatives are coded; every other offset is the
    I1/I2 image: C_(-j,k) = I1 C_(j,k), C_(j,-k) = I2 C_(j,k).
    """
    if level == 1:
        base = lambda x1, x2: C1_plus(x1, x2, p)
        return {(1, 0): base, (-1, 0): inversion1(base, p)}
    if level != 2:
        raise ValueError("level must be 1 or 2")
    c11 = lambda x1, x2: C2_11(x1, x2, p)
    c10 = lambda x1, x2: C2_10(x1, x2, p, literal=literal_c10)
    c01 = lambda x1, x2: C2_01(x1, x2, p)
    return {
        (1, 1): c11,
        (-1, 1): inversion1(c11, p),
        (1, -1): inversion2(c11, p),
        (-1, -1): inversion1(inversion2(c11, p), p),
        (1, 0): c10,
        (-1, 0): inversion1(c10, p),
        (0, 1): c01,
        (0, -1): inversion2(c01, p),
    }


def coeff_C(level, offset, g, p, literal_c10=False):
    fam = coefficient_family(level, p, literal_c10)
    f = fam.get(tuple(offset))
    if f is None:
        return Fraction(0)
    x1, x2 = g
    return f(x1, x2)


def _shift_stencil(family, const, name, offsets=None):
    """-sum_o C_o (T^o - 1) + const, as an offset->function stencil."""
    keys = tuple(family) if offsets is None else offsets
    terms = {}
    for off in keys:
        f = family[off]
        terms[off] = (lambda f: lambda g: -f(*g))(f)

    def diag(g):
        return sum((family[o](*g) for o in keys), Fraction(0)) + const

    terms[(0, 0)] = diag
    return StencilOperator(terms, name)


def lambda1x_op(p):
    """Lambda_1^x = -L_1^x + c(c-1), c = (beta2 - beta0)/2."""
    c = (p.beta2 - p.beta0) / 2
    return _shift_stencil(coefficient_family(1, p), c * (c - 1), "Lambda1x")


def lambda2x_op(p, literal_c10=False, offsets=None):
    """Lambda_2^x = -L_2^x + c(c-1), c = (beta3 - beta0)/2."""
    c = (p.beta3 - p.beta0) / 2
    fam = coefficient_family(2, p, literal_c10)
    return _shift_stencil(fam, c * (c - 1), "Lambda2x", offsets)


def lambda1_eigenvalue(d, p):
    return kappa(d[0], (p.beta2 - p.beta0) / 2)


def lambda2_eigenvalue(d, p):
    return kappa(d[0] + d[1], (p.beta3 - p.beta0) / 2)


def L1_eigenvalue(d, p):
    """Eigenvalue of L_1^x: -n1(n1 + beta2 - beta0 - 1)."""
    n1 = d[0]
    return -n1 * (n1 + p.beta2 - p.beta0 - 1)


def L2_eigenvalue(d, p, printed=False):
    """Eigenvalue of L_2^x.  The printed display carries beta2; the value
    consistent with Lambda_2^x has beta3."""
    s = d[0] + d[1]
    top = p.beta2 if printed else p.beta3
    return -s * (s + top - p.beta0 - 1)


# --------------------------------------------------------------------------
# Omega_1


def B_tilde(x1, x2, p):
    b0, b1, b2, b3 = p.betas
    N = p.N
    num = (x2 + x1 + b2) * (x2 - x1 + b2 - b1) * (N - x2) * (x2 + N + b3)
    den = (2 * x2 + b2 + 1) * (2 * x2 + b2)
    return Fraction(num) / den


def E_tilde(x1, x2, p, literal=False):
    """E~.  ``literal`` keeps the printed (x2+x1+beta2); the I2 image of B~
    has (x2+x1+beta1)."""
    b0, b1, b2, b3 = p.betas
    N = p.N
    pair = (x2 + x1 + b2) if literal else (x2 + x1 + b1)
    num = (x2 - x1) * pair * (N - x2 + b3 - b2) * (N + x2 + b2)
    den = (2 * x2 + b2 - 1) * (2 * x2 + b2)
    return Fraction(num) / den


def omega1_constant(w, literal=False):
    s = w.nu3 + w.nu4
    c = s * (s - 1)
    return c / 4 if literal else c


def omega1_op(p, w, literal_E=False, literal_const=False):
    """Omega_1 = -B~ T_x2 - E~ T_x2^-1 + B~ + E~ + const."""
    const = omega1_constant(w, literal_const)
    return StencilOperator(
        {
            (0, 1): lambda g: -B_tilde(g[0], g[1], p),
            (0, -1): lambda g: -E_tilde(g[0], g[1], p, literal_E),
            (0, 0): lambda g: B_tilde(g[0], g[1], p) + E_tilde(g[0], g[1], p, literal_E) + const,
        },
        "Omega1",
    )


# --------------------------------------------------------------------------
# duality


def dual_map(x1, x2, n1, n2, p):
    """Dual variables, degrees and parameters.

    Solves x1 = n~1+n~2+b~3-b~0+N-1, x2 = n~1+b~2-b~0+N-1,
    n1 = x~2+b~2+N, n2 = x~1-x~2+b~1-b~2, b0 = b~0,
    b1 = b~0-b~3-2N+1, b2 = b~0-b~2-2N+1, b3 = b~0-b~1-2N+1
    for the tilde quantities.  The solution has the same shape, so the map
    is an involution.
    """
    b0, b1, b2, b3 = p.betas
    N = p.N
    tb0 = b0
    tb3 = b0 - b1 - 2 * N + 1
    tb2 = b0 - b2 - 2 * N + 1
    tb1 = b0 - b3 - 2 * N + 1
    tn1 = x2 - tb2 + tb0 - N + 1
    tn2 = x1 - tb3 + tb0 - N + 1 - tn1
    tx2 = n1 - tb2 - N
    tx1 = n2 + tx2 - tb1 + tb2
    tp = RacahParams2.__new__(RacahParams2)
    for name, v in zip(("beta0", "beta1", "beta2", "beta3", "N"), (tb0, tb1, tb2, tb3, N)):
        object.__setattr__(tp, name, v)
    return tx1, tx2, tn1, tn2, tp


def dual_params(p):
    return dual_map(0, 0, 0, 0, p)[4]


def dual_stencil_n(op, p):
    """Transport an x-stencil built for the dual parameters to the degree grid.

    In dual coordinates x~1 = n1+n2+b3-b0+N-1 and x~2 = n1+b2-b0+N-1, so a
    shift (j, k) in (x~1, x~2) is the shift (k, j-k) in (n1, n2).
    ``op`` must be a stencil whose coefficient functions take dual points.
    """
    b0, _, b2, b3 = p.betas
    N = p.N

    def to_dual(d):
        n1, n2 = d
        return (n1 + n2 + b3 - b0 + N - 1, n1 + b2 - b0 + N - 1)

    terms = {}
    for (j, k), f in op.terms.items():
        terms[(k, j - k)] = (lambda f: lambda d: f(to_dual(d)))(f)
    return StencilOperator(terms, op.name + "^n")


def lambda1n_op(p):
    """Dual of Lambda_1^x acting on degrees; eigenvalue kappa(x2, (b2+1)/2)."""
    return dual_stencil_n(lambda1x_op(dual_params(p)), p)


def lambda2n_op(p):
    """Dual of Lambda_2^x acting on degrees; eigenvalue kappa(x1, (b1+1)/2)."""
    return dual_stencil_n(lambda2x_op(dual_params(p)), p)


# --------------------------------------------------------------------------
# the (m; y; gamma) family


def gamma_params(w, N):
    """(gamma, gamma~) packs, each as a 4-tuple."""
    n1, n2, n3, n4 = w.values
    g0 = -2 * N - 2 * (n1 + n2 + n3 + n4) + 1
    tilde = (g0, -2 * N - 2 * (n2 + n3 + n4) + 1, -2 * N - 2 * (n3 + n4) + 1, -2 * N - 2 * n4 + 1)
    plain = (g0, -2 * N - 2 * (n1 + n2 + n3) + 1, -2 * N - 2 * (n1 + n2) + 1, -2 * N - 2 * n1 + 1)
    return plain, tilde


def y_variables(g, w, N):
    """y1 = x2 + N + 2(nu1+nu2+nu3) - 1, y2 = x1 + N + 2(nu1+nu2) - 1."""
    x1, x2 = g
    n1, n2, n3, _ = w.values
    return (x2 + N + 2 * (n1 + n2 + n3) - 1, x1 + N + 2 * (n1 + n2) - 1)


def m_tilde(g):
    """m~1 = x1, m~2 = x2 - x1."""
    x1, x2 = g
    return (x1, x2 - x1)


def m_from_ytilde(yt, w, N, literal=False):
    """(m1, m2) from dual variables y~.  The printed second component ends in
    g~2 - g~2 (= 0); the dual-map form is g~1 - g~2."""
    _, gt = gamma_params(w, N)
    yt1, yt2 = yt
    m1 = yt2 + gt[2] + N
    m2 = yt1 - yt2 + (0 if literal else gt[1] - gt[2])
    return m1, m2


def ytilde_from_m(m, w, N, literal=False):
    """Inverse of :func:`m_from_ytilde`."""
    _, gt = gamma_params(w, N)
    m1, m2 = m
    yt2 = m1 - gt[2] - N
    yt1 = m2 + yt2 - (0 if literal else gt[1] - gt[2])
    return yt1, yt2


def ys_spectral_match(w, N, literal=False):
    """Do the y~ eigenvalues of (Omega1, Lambda2) equal the m eigenvalues?

    On the m~ side the pair acts with kappa(y~2, (g~2+1)/2) and
    kappa(y~1, (g~1+1)/2); on the m side with kappa(m1, (g2-g0)/2) and
    kappa(m1+m2, (g3-g0)/2).  Returns the list of degree pairs where the
    two sides disagree under the chosen reading of m2.
    """
    g, gt = gamma_params(w, N)
    bad = []
    for m in degree_set(N):
        yt1, yt2 = ytilde_from_m(m, w, N, literal)
        ok = kappa(yt2, (gt[2] + 1) / 2) == kappa(m[0], (g[2] - g[0]) / 2) and kappa(
            yt1, (gt[1] + 1) / 2
        ) == kappa(m[0] + m[1], (g[3] - g[0]) / 2)
        if not ok:
            bad.append(m)
    return bad


def m_tilde_is_bijection(N):
    """m~ = (x1, x2-x1) sends the triangle onto the degree set."""
    image = sorted(m_tilde(g) for g in triangle(N))
    return image == sorted(degree_set(N).points)


def gamma_pack(w, N):
    g = gamma_params(w, N)[0]
    tp = RacahParams2.__new__(RacahParams2)
    for name, v in zip(("beta0", "beta1", "beta2", "beta3", "N"), (*g, N)):
        object.__setattr__(tp, name, v)
    return tp


def racah2_eval_my(m, g, w, N):
    """R2(m; y(g); gamma; N) for a grid point g of the x-triangle."""
    return racah2_eval(m, y_variables(g, w, N), gamma_pack(w, N))


def racah2_my_table(w, N):
    return [[racah2_eval_my(m, g, w, N) for g in triangle(N)] for m in degree_set(N)]


def omega1_eigenvalue(m, w, N):
    g = gamma_params(w, N)[0]
    return kappa(m[0], (g[2] - g[0]) / 2)


def lambda2_my_eigenvalue(m, w, N):
    g = gamma_params(w, N)[0]
    return kappa(m[0] + m[1], (g[3] - g[0]) / 2)
