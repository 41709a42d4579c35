"""Univariate Racah polynomials in the beta parametrization.

The polynomials are

    r_n(x) = r_n(b1-b0-1, b2-b1-1, -N-1, N+b1; x)
           = (b1-b0)_n (-N)_n (N+b2)_n
             * 4F3(-n, n+b2-b0-1, -x, x+b1; b1-b0, N+b2, -N; 1),

eigenfunctions on {0..N} of the second-order difference operator Lambda
with eigenvalue kappa(n, (b2-b0)/2).  Weights nu_i of positive discrete
series su(1,1) representations fix the betas as partial sums 2(nu_1+...)-1.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleError, ValidityError
from .exactnum import as_rational, pochhammer, racah_r
from .gridop import StencilOperator, materialize, segment

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SU11Weights:
    """Representation weights nu_1..nu_3 (and optionally nu_4), all positive."""

    nu1: Fraction
    nu2: Fraction
    nu3: Fraction
    nu4: Fraction = None

    def __post_init__(self):
        for name in ("nu1", "nu2", "nu3", "nu4"):
            v = getattr(self, name)
            if v is None:
                continue
            v = as_rational(v)
            if v <= 0:
                raise ValidityError(f"{name} must be positive, got {v}")
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, values):
        values = [as_rational(v) for v in values]
        if len(values) not in (3, 4):
            raise ValueError("need three or four weights")
        return cls(*values)

    @property
    def values(self):
        return tuple(v for v in (self.nu1, self.nu2, self.nu3, self.nu4) if v is not None)

    def casimirs(self):
        """Single-factor Casimir values Q^(i) = nu_i (nu_i - 1)."""
        return tuple(v * (v - 1) for v in self.values)


@dataclass(frozen=True)
class RacahParams1:
    beta0: Fraction
    beta1: Fraction
    beta2: Fraction
    N: int

    def __post_init__(self):
        for name in ("beta0", "beta1", "beta2"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if int(self.N) != self.N or self.N < 0:
            raise ValidityError("N must be a nonnegative integer")
        object.__setattr__(self, "N", int(self.N))
        for x in range(self.N + 1):
            for shift in (-1, 0, 1):
                if 2 * x + self.beta1 + shift == 0:
                    raise ValidityError(
                        f"2x+beta1{shift:+d} vanishes at x={x} (beta1={self.beta1})"
                    )

    @property
    def betas(self):
        return (self.beta0, self.beta1, self.beta2)

    @property
    def c(self):
        """Spectral shift (b2 - b0)/2 of Lambda."""
        return (self.beta2 - self.beta0) / 2


def betas_from_nu(values):
    """beta_k = 2(nu_1 + ... + nu_{k+1}) - 1 for each prefix of ``values``."""
    out = []
    acc = Fraction(0)
    for v in values:
        acc += as_rational(v)
        out.append(2 * acc - 1)
    return tuple(out)


def beta_from_nu(w, N):
    """Parameter pack induced by the weights: RacahParams1 for three weights,
    a bivariate pack for four."""
    betas = betas_from_nu(w.values)
    if len(betas) == 3:
        return RacahParams1(*betas, N)
    from .racah2 import RacahParams2

    return RacahParams2(*betas, N)


def kappa(n, c):
    """kappa(n, c) = (n + c)(n + c - 1)."""
    n, c = as_rational(n), as_rational(c)
    return (n + c) * (n + c - 1)


def racah1_eval(n, x, p):
    """r_n(x) for the pack ``p`` in the unnormalized convention above."""
    if not (0 <= n <= p.N and 0 <= x <= p.N):
        raise ValueError(f"need 0 <= n, x <= N={p.N}")
    b0, b1, b2 = p.betas
    return racah_r(n, b1 - b0 - 1, b2 - b1 - 1, -p.N - 1, p.N + b1, x)


def racah1_table(p):
    """Rows r_n(0..N) for n = 0..N."""
    return [[racah1_eval(n, x, p) for x in range(p.N + 1)] for n in range(p.N + 1)]


def coeff_B(x, p):
    b0, b1, b2 = p.betas
    N = p.N
    num = (x + b1 - b0) * (x + b1) * (x + b2 + N) * (N - x)
    den = (2 * x + b1) * (2 * x + b1 + 1)
    return Fraction(num) / den


def coeff_E(x, p):
    b0, b1, b2 = p.betas
    N = p.N
    num = x * (x + b0) * (N - x - b1 + b2) * (N + x + b1)
    den = (2 * x + b1) * (2 * x + b1 - 1)
    return Fraction(num) / den


def lambda1_stencil(p):
    """Lambda = -[B (T - 1) + E (T^-1 - 1)] + c (c - 1) with c = (b2 - b0)/2."""
    const = p.c * (p.c - 1)
    return StencilOperator(
        {
            1: lambda x: -coeff_B(x, p),
            -1: lambda x: -coeff_E(x, p),
            0: lambda x: coeff_B(x, p) + coeff_E(x, p) + const,
        },
        name="Lambda",
    )


def lambda1_matrix(p):
    return materialize(lambda1_stencil(p), segment(p.N))


def eigenvalue1(n, p):
    return kappa(n, p.c)


def qr3_constants(p, corrected=False):
    """Structure constants (d, e1, e2) of QR(3) for k1 = -kappa(x,(b1+1)/2)/2,
    k2 = -Lambda/2, in terms of the betas.

    The default returns the constants as printed.  Their e1 carries the factor
    (b1 + b0 - c); the relation [k2, k3] only closes with (b1 - b0 - c), which
    ``corrected=True`` uses.  The Casimir form below has no such problem.
    """
    b0, b1, b2 = p.betas
    N = p.N
    c = (b2 - b0) / 2
    h = (b1 + 1) / 2
    d = HALF * (
        N * (N + b2)
        + HALF * b0 * (b0 - b1 + 1)
        + HALF * b1 * (b1 - b2)
        + HALF * b2 * (b2 - 1)
        - HALF
    )
    mid = (b1 - b0 - c) if corrected else (b1 + b0 - c)
    e1 = -Fraction(1, 4) * (c - 1) * mid * (N + c) * (N + b0 + c)
    e2 = Fraction(1, 4) * (h - 1) * (b0 + 1 - h) * (N + h) * (N + b2 - h)
    return d, e1, e2


def qr3_constants_from_casimirs(w, N):
    """(d, e1, e2) from Q^(1..3) and the total Casimir Q^(123) = nu(nu-1)."""
    q1, q2, q3 = w.casimirs()[:3]
    nu = w.nu1 + w.nu2 + w.nu3 + N
    q = nu * (nu - 1)
    d = HALF * (q1 + q2 + q3 + q)
    e1 = -Fraction(1, 4) * (q3 - q2) * (q1 - q)
    e2 = Fraction(1, 4) * (q2 - q1) * (q3 - q)
    return d, e1, e2


def _ratio(num_factors, den_factors):
    num = Fraction(1)
    for f in num_factors:
        num *= f
    den = Fraction(1)
    for f in den_factors:
        den *= f
    if not den:
        raise PoleError("vanishing denominator Pochhammer in the gauge factor")
    return num / den


def gauge_omega(x, w, N):
    """x-dependent block of G(x, n)^2."""
    n1, n2, n3 = w.nu1, w.nu2, w.nu3
    return _ratio(
        [
            pochhammer(-N, x),
            pochhammer(2 * n2, x),
            pochhammer(2 * n1 + 2 * n2 - 1, x),
            pochhammer(N + 2 * n1 + 2 * n2 + 2 * n3 - 1, x),
            pochhammer(n1 + n2 + HALF, x),
        ],
        [
            pochhammer(2 * n1, x),
            pochhammer(-N - 2 * n3 + 1, x),
            pochhammer(n1 + n2 - HALF, x),
            pochhammer(N + 2 * n1 + 2 * n2, x),
            pochhammer(1, x),
        ],
    )


def gauge_sigma_n(n, w, N):
    """n-dependent block of G(x, n)^2."""
    n1, n2, n3 = w.nu1, w.nu2, w.nu3
    return _ratio(
        [
            pochhammer(1, n),
            pochhammer(2 * n3, n),
            pochhammer(n + 2 * n2 + 2 * n3 - 1, n),
            pochhammer(N + 2 * n2 + 2 * n3, n),
            pochhammer(-N - 2 * n1 + 1, n),
        ],
        [
            pochhammer(-N, n),
            pochhammer(2 * n2 + 2 * n3, 2 * n),
            pochhammer(2 * n2, n),
            pochhammer(N + 2 * n1 + 2 * n2 + 2 * n3 - 1, n),
        ],
    )


def gauge_constant(w, N):
    """N-only block of G(x, n)^2."""
    n1, n2, n3 = w.nu1, w.nu2, w.nu3
    return _ratio(
        [pochhammer(2 * n2 + 2 * n3, N), pochhammer(-N - 2 * n1 - 2 * n2 + 1, N)],
        [pochhammer(-N - 2 * n1 + 1, N), pochhammer(2 * n3, N)],
    )


def gauge_squared(x, n, w, N):
    """G(x, n)^2 as printed: x-block * n-block * N-block.

    Note this is not the orthonormalizing gauge.  The n- and N-blocks give
    the squared norm h_n of R_n = r_n / r_n(0), so the normalizing factor is
    omega_x / (n-block * N-block); see :func:`gauge_sigma`.
    """
    return gauge_omega(x, w, N) * gauge_sigma_n(n, w, N) * gauge_constant(w, N)


def squared_norm(n, w, N):
    """h_n = sum_x omega_x R_n(x)^2, in closed form (n-block * N-block)."""
    return gauge_sigma_n(n, w, N) * gauge_constant(w, N)


def gauge_sigma(n, w, N, printed=False):
    """sigma_n with sum_x omega_x sigma_n R_n R_m = delta_nm.

    ``printed=True`` returns the literal split of the printed G^2 instead
    (n-block times the N-only block), which is h_n rather than 1/h_n.
    """
    h = squared_norm(n, w, N)
    return h if printed else 1 / h


def gauge_squared_corrected(x, n, w, N):
    return gauge_omega(x, w, N) * gauge_sigma(n, w, N)


def normalized_table(p):
    """Rows R_n(x) = r_n(x) / r_n(0); R_n(0) = 1."""
    out = []
    for row in racah1_table(p):
        out.append([v / row[0] for v in row])
    return out
