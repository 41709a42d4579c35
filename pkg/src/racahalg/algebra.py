"""Verification of the quadratic algebra relations as exact matrix identities.

Operators are realized on the triangle {0 <= x1 <= x2 <= N} in the bare
gauge (no weight conjugation).  Every relation is checked by forming the
residual matrix lhs - rhs and testing it for exact zero.

Where a printed relation fails, the report also evaluates the candidate
correction and keeps both verdicts; nothing is corrected silently.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .errors import SuiteFailure
from .exactnum import format_rational
from .gridop import OperatorMatrix, anticommutator, commutator, is_zero, materialize, segment, triangle
from .racah1 import RacahParams1, SU11Weights, kappa, lambda1_matrix, qr3_constants
from .racah2 import lambda1x_op, lambda2x_op, omega1_op, params_from_nu

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass
class RelationReport:
    relation_id: str
    printed_holds: bool
    corrected_holds: object = None  # bool, or None when no correction is needed
    note: str = ""
    witness: object = None  # ZeroCheck of the printed form when it fails
    candidates: dict = field(default_factory=dict)

    @property
    def failed(self):
        return not self.printed_holds and not self.corrected_holds

    @property
    def verdict(self):
        if self.printed_holds:
            return "printed"
        if self.corrected_holds:
            return "corrected"
        return "FAILED"

    def to_json(self):
        witness = None
        if self.witness is not None and not self.witness.zero:
            witness = {
                "entry": format_rational(self.witness.residual),
                "position": list(self.witness.position),
            }
            if self.witness.point is not None:
                witness["points"] = [list(p) if isinstance(p, tuple) else p for p in self.witness.point]
        return {
            "relationId": self.relation_id,
            "printedFormHolds": self.printed_holds,
            "correctedFormHolds": "n/a" if self.corrected_holds is None else self.corrected_holds,
            "correctionNote": self.note,
            "residualWitness": witness,
        }


def _report(rid, printed, corrected=None, note="", extra=None):
    """Build a report from residual matrices (corrected may be None)."""
    pz = is_zero(printed)
    cz = None if corrected is None else bool(is_zero(corrected))
    cands = {"printed": bool(pz)}
    if corrected is not None:
        cands["corrected"] = cz
    for name, m in (extra or {}).items():
        cands[name] = bool(is_zero(m))
    if pz:
        # no correction needed; still record the candidate for reference
        return RelationReport(rid, True, None if corrected is None else cz, note, None, cands)
    return RelationReport(rid, False, cz, note, pz, cands)


def raise_on_failure(reports):
    bad = [r.relation_id for r in reports if r.failed]
    if bad:
        raise SuiteFailure("relations failing in every form: " + ", ".join(bad))
    return reports


# --------------------------------------------------------------------------
# operator set


class OperatorSet:
    """K1..K5, their commutators L1..L4 and the intermediate Casimirs.

    Casimirs: Q12 = -2K1, Q23 = -2K2, Q34 = -2K5, Q123 = -2K3,
    Q234 = -2K4; Q13, Q24 and Q14 follow from the linear relations
    Q(ijk) = Q(ij) + Q(ik) + Q(jk) - Qi - Qj - Qk and
    Q = sum Q(ij) - 2 sum Qi.  Single-factor Casimirs and the total Q
    are scalars.
    """

    def __init__(self, w, N, k1_arg="half"):
        self.w = w
        self.N = N
        self.p = params_from_nu(w, N)
        self.grid = triangle(N)
        p, g = self.p, self.grid
        n = len(g)
        self.I = OperatorMatrix.identity(n, g)
        b1 = p.beta1 if k1_arg == "literal" else (p.beta1 + 1) / 2
        self.K1 = OperatorMatrix.diagonal([-kappa(x[0], b1) / 2 for x in g], g)
        self.K2 = materialize(lambda1x_op(p), g) * -HALF
        self.K3 = OperatorMatrix.diagonal([-kappa(x[1], (p.beta2 + 1) / 2) / 2 for x in g], g)
        self.K4 = materialize(lambda2x_op(p), g) * -HALF
        self.K5 = materialize(omega1_op(p, w), g) * -HALF
        self.L1 = commutator(self.K1, self.K2)
        self.L2 = commutator(self.K1, self.K4)
        self.L3 = commutator(self.K3, self.K5)
        self.L4 = commutator(self.K2, self.K5)
        self.q = dict(zip((1, 2, 3, 4), w.casimirs()))
        self.Qtot = kappa(N, (p.beta3 + 1) / 2)

        Q = {}
        Q[(1, 2)] = self.K1 * -2
        Q[(2, 3)] = self.K2 * -2
        Q[(3, 4)] = self.K5 * -2
        Q[(1, 2, 3)] = self.K3 * -2
        Q[(2, 3, 4)] = self.K4 * -2
        qs = self.q
        Q[(1, 3)] = Q[(1, 2, 3)] - Q[(1, 2)] - Q[(2, 3)] + (qs[1] + qs[2] + qs[3])
        Q[(2, 4)] = Q[(2, 3, 4)] - Q[(2, 3)] - Q[(3, 4)] + (qs[2] + qs[3] + qs[4])
        Q[(1, 4)] = (
            self.I * (self.Qtot + 2 * sum(qs.values()))
            - Q[(1, 2)] - Q[(1, 3)] - Q[(2, 3)] - Q[(2, 4)] - Q[(3, 4)]
        )
        for t in ((1, 2, 4), (1, 3, 4)):
            Q[t] = self._triple_from_pairs(Q, *t)
        self.Q = Q

    def _triple_from_pairs(self, Q, a, b, c):
        qs = self.q
        return Q[(a, b)] + Q[(a, c)] + Q[(b, c)] - (qs[a] + qs[b] + qs[c])

    @property
    def K(self):
        return (None, self.K1, self.K2, self.K3, self.K4, self.K5)

    def Qp(self, a, b):
        return self.Q[tuple(sorted((a, b)))]

    def Qt(self, a, b, c):
        return self.Q[tuple(sorted((a, b, c)))]

    def offset_support(self):
        """Which shift directions each K uses (for the structural checks)."""
        out = {}
        for name in ("K1", "K2", "K3", "K4", "K5"):
            m = getattr(self, name)
            offs = set()
            for i, row in enumerate(m.nonzeros()):
                gi = self.grid.points[i]
                for j, _ in row:
                    gj = self.grid.points[j]
                    offs.add((gj[0] - gi[0], gj[1] - gi[1]))
            out[name] = offs
        return out


def build_operator_set(w, N):
    if not isinstance(w, SU11Weights):
        w = SU11Weights.of(w)
    return OperatorSet(w, N)


# --------------------------------------------------------------------------
# QR(9)


def _qr3_rhs(a, b, d, e, target):
    """a^2 + {a, b} + d target + e, with ``target`` the operator d multiplies."""
    return a @ a + anticommutator(a, b) + d @ target + e


def verify_qr9_catalog(s):
    K1, K2, K3, K4, K5 = s.K1, s.K2, s.K3, s.K4, s.K5
    L1, L2, L3, L4 = s.L1, s.L2, s.L3, s.L4
    I = s.I
    Q1, Q2, Q3, Q4 = (s.q[i] for i in (1, 2, 3, 4))
    Q = s.Qtot
    C = commutator
    A = anticommutator
    out = []

    # first copy: K1, K2
    d1 = (I * (Q1 + Q2 + Q3) - K3 * 2) * HALF
    e11 = (K3 * 2 + Q1) * (-QUARTER * (Q3 - Q2))
    e12 = (K3 * 2 + Q3) * (QUARTER * (Q2 - Q1))
    out.append(_report("copy1:[K2,L1]", C(K2, L1) - _qr3_rhs(K2, K1, d1, e11, K2)))
    out.append(_report("copy1:[L1,K1]", C(L1, K1) - _qr3_rhs(K1, K2, d1, e12, K1)))
    out.append(_report("commute:[K1,K3]", C(K1, K3)))
    out.append(_report("commute:[K2,K3]", C(K2, K3)))

    # second copy: K1, K4
    l2_nonzero = not is_zero(L2)
    rep = _report("copy2:L2", C(K1, K3) - L2)
    rep.corrected_holds = l2_nonzero
    rep.candidates["corrected"] = l2_nonzero
    rep.note = "printed '[K1,K3] = L2', but [K1,K3] = 0; the generator is L2 = [K1,K4], which is nonzero"
    out.append(rep)
    d2p = (K5 * 2 - Q1 - Q2) * HALF
    d2c = (I * (Q1 + Q2 + Q) - K5 * 2) * HALF
    e21 = (K5 * 2 + Q2) * (-QUARTER * (Q - Q1))
    e22 = (K5 * 2 + Q) * (QUARTER * (Q1 - Q2))
    note2 = "d2 = (Q1+Q2+Q-2K5)/2 in place of the printed (2K5-Q1-Q2)/2"
    out.append(
        _report(
            "copy2:[K4,L2]",
            C(K4, L2) - _qr3_rhs(K4, K1, d2p, e21, K4),
            C(K4, L2) - _qr3_rhs(K4, K1, d2c, e21, K4),
            note2,
        )
    )
    out.append(
        _report(
            "copy2:[L2,K1]",
            C(L2, K1) - _qr3_rhs(K1, K4, d2p, e22, K1),
            C(L2, K1) - _qr3_rhs(K1, K4, d2c, e22, K1),
            note2,
        )
    )
    out.append(_report("commute:[K1,K5]", C(K1, K5)))
    out.append(_report("commute:[K4,K5]", C(K4, K5)))

    # third copy: K3, K5
    d3 = (I * (Q + Q3 + Q4) - K1 * 2) * HALF
    e31 = (K1 * 2 + Q) * (-QUARTER * (Q3 - Q4))
    e32 = (K1 * 2 + Q3) * (QUARTER * (Q - Q4))
    lhs = C(K5, L3)
    out.append(
        _report(
            "copy3:[K5,L3]",
            lhs - (K5 @ K5 + A(K3, K5) + d3 @ K3 + e31),
            lhs - (K5 @ K5 + A(K3, K5) + d3 @ K5 + e31),
            "d3 multiplies K5, not K3",
        )
    )
    lhs = C(L3, K3)
    out.append(
        _report(
            "copy3:[L3,K3]",
            lhs - (K3 @ K3 + A(K3, K5) + d3 @ K4 + e32),
            lhs - (K3 @ K3 + A(K3, K5) + d3 @ K3 - e32),
            "d3 multiplies K3, not K4, and e32 = -(Q-Q4)(2K1+Q3)/4",
            extra={"d3K3 only": lhs - (K3 @ K3 + A(K3, K5) + d3 @ K3 + e32)},
        )
    )

    # fourth copy: K2, K5
    d4 = (I * (Q2 + Q3 + Q4) - K4 * 2) * -HALF
    e41 = (K4 * 2 + Q2) * (-QUARTER * (Q3 - Q4))
    e42 = (K4 * 2 + Q4) * (QUARTER * (Q2 - Q3))
    note4 = "d4, e41, e42 change sign"
    lhs = C(K5, L4)
    out.append(
        _report(
            "copy4:[K5,L4]",
            lhs - (K5 @ K5 + A(K2, K5) + d4 @ K4 + e41),
            lhs - (K5 @ K5 + A(K2, K5) - d4 @ K5 - e41),
            note4 + "; d4 multiplies K5, not K4",
            extra={"d4K5 only": lhs - (K5 @ K5 + A(K2, K5) + d4 @ K5 + e41)},
        )
    )
    lhs = C(L4, K2)
    out.append(
        _report(
            "copy4:[L4,K2]",
            lhs - (K2 @ K2 + A(K2, K4) + d4 @ K2 + e42),
            lhs - (K2 @ K2 + A(K2, K5) - d4 @ K2 - e42),
            note4 + "; anticommutator {K2,K5}, not {K2,K4}",
            extra={"{K2,K5} only": lhs - (K2 @ K2 + A(K2, K5) + d4 @ K2 + e42)},
        )
    )
    out.append(_report("commute:[K2,K4]", C(K2, K4)))

    # closure and the extra relations
    lhs = C(K3, K4)
    out.append(
        _report(
            "closure:[K3,K4]",
            lhs - (L4 + L3 - L2 - L1),
            lhs - (L2 + L3 - L1 - L4),
            "exact fit gives [K3,K4] = L2 + L3 - L1 - L4 (signs of L2 and L4 reversed)",
        )
    )
    out.append(_report("extra:[K3,L1]", C(K3, L1)))
    base4 = (
        (A(K1, K2) + A(K1, K4) + A(K2, K4) - A(K2, K5)) * HALF
        + K1 * (Q4 / 2) + (K2 + K5) * (Q1 / 2) + (K3 + K4) * (Q2 / 2)
        + I * (QUARTER * (Q1 * Q2 + Q1 * Q4 + Q2 * Q4))
    )
    lhs = C(K4, L1)
    out.append(
        _report(
            "extra:[K4,L1]",
            lhs - (base4 + (A(K3, K5) - A(K3, K5)) * HALF),
            lhs - (base4 + (A(K3, K5) - A(K3, K4)) * HALF),
            "the second {K3,K5} (printed with a minus sign) is {K3,K4}",
        )
    )
    base5 = (
        (A(K1, K4) + A(K3, K5) - A(K1, K2) - A(K1, K5) - A(K3, K4) - A(K2, K5)) * HALF
        - (K1 + K4) * (Q3 / 2) - (K3 + K5) * (Q2 / 2) - K2 * (Q / 2)
    )
    const5 = QUARTER * (Q2 + Q3) * Q + QUARTER * Q2 * Q3
    lhs = C(K5, L1)
    out.append(
        _report(
            "extra:[K5,L1]",
            lhs - (base5 + const5),
            lhs - (base5 - const5),
            "the scalar term is -(Q(Q2+Q3) + Q2 Q3)/4",
        )
    )
    out.append(_independence_report(s))
    return out


def _independence_report(s):
    """L1..L4 are linearly independent (rank 4 of their flattened entries)."""
    vecs = [[v for row in m.rows for v in row] for m in (s.L1, s.L2, s.L3, s.L4)]
    rank = _rank(vecs)
    rep = RelationReport("L1..L4 independent", rank == 4, None, f"rank {rank}")
    rep.candidates = {"printed": rank == 4}
    return rep


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def k1_argument_report(w, N, s=None):
    """Summary lines write Q12 = kappa(x1, beta1); the basis uses (beta1+1)/2."""
    lit = OperatorSet(w, N, k1_arg="literal")
    std = s if s is not None else OperatorSet(w, N)

    def copy1(s):
        d1 = (s.I * (s.q[1] + s.q[2] + s.q[3]) - s.K3 * 2) * HALF
        e11 = (s.K3 * 2 + s.q[1]) * (-QUARTER * (s.q[3] - s.q[2]))
        return commutator(s.K2, s.L1) - _qr3_rhs(s.K2, s.K1, d1, e11, s.K2)

    return _report(
        "K1:kappa(x1,beta1)",
        copy1(lit),
        copy1(std),
        "kappa(x1,(beta1+1)/2) closes the first copy; kappa(x1,beta1) does not",
    )


# --------------------------------------------------------------------------
# Casimir catalog


def _perm_sign(t):
    sign = 1
    t = list(t)
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                sign = -sign
    return sign


class _Products:
    """Memoized products of the pair Casimirs (the catalog reuses each many times)."""

    def __init__(self, s):
        self.s = s
        self._prod = {}
        self._R = {}

    def prod(self, a, b):
        key = (a, b)
        if key not in self._prod:
            self._prod[key] = self.s.Q[a] @ self.s.Q[b]
        return self._prod[key]

    def anti(self, a, b):
        return self.prod(a, b) + self.prod(b, a)

    def comm(self, a, b):
        return self.prod(a, b) - self.prod(b, a)

    def R(self, i, j, k, convention):
        """[Q(ij), Q(jk)], times the sign of (ijk) for the literal convention.

        Without the sign this equals sign(ijk) R_sorted, so it is
        antisymmetric in each index pair; with it, it is symmetric.
        """
        c = self.comm(_pair(i, j), _pair(j, k))
        return c * _perm_sign((i, j, k)) if convention == "epsilon" else c


def _pair(a, b):
    return tuple(sorted((a, b)))


def verify_casimir_catalog(s):
    P = _Products(s)
    qs = s.q
    I = s.I
    out = []
    comm_cache = {}

    sorted_R = {t: P.R(*t, "plain") for t in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))}

    def as_sorted(R, triple):
        """Express R as +-R_sorted when it is one (checked, not assumed)."""
        base = sorted_R[tuple(sorted(triple))]
        if R == base:
            return 1
        if R == -base:
            return -1
        return None

    def comm_R(R_key, convention, pair):
        # [R, Q(pair)] with R identified by its index tuple; the products with
        # the four sorted R's are shared between all orderings
        key = (R_key, convention, pair)
        if key not in comm_cache:
            R = P.R(*R_key, convention)
            sign = as_sorted(R, R_key)
            skey = (tuple(sorted(R_key)), pair)
            if sign is not None:
                if skey not in comm_cache:
                    base = sorted_R[skey[0]]
                    comm_cache[skey] = base @ s.Q[pair] - s.Q[pair] @ base
                comm_cache[key] = comm_cache[skey] * sign
            else:
                comm_cache[key] = R @ s.Q[pair] - s.Q[pair] @ R
        return comm_cache[key]

    for i, j, k, l in permutations((1, 2, 3, 4)):
        rhs = (
            P.anti(_pair(i, k), _pair(j, l))
            - P.anti(_pair(i, l), _pair(j, k))
            - I * (2 * (qs[i] - qs[j]) * (qs[k] - qs[l]))
            + s.Qp(i, l) * (2 * (qs[j] + qs[k]))
            + s.Qp(j, k) * (2 * (qs[i] + qs[l]))
            - s.Qp(i, k) * (2 * (qs[j] + qs[l]))
            - s.Qp(j, l) * (2 * (qs[i] + qs[k]))
        )
        pr = comm_R((j, k, l), "epsilon", _pair(i, j)) - rhs
        co = comm_R((j, k, l), "plain", _pair(i, j)) - rhs
        out.append(
            _report(
                f"[R{j}{k}{l},Q{i}{j}]",
                pr,
                co,
                "R_ijk taken as [Q(ij),Q(jk)] without the extra sign factor",
            )
        )
    for i, j, k in permutations((1, 2, 3, 4), 3):
        rhs = P.anti(_pair(i, j), _pair(i, k)) - P.anti(_pair(i, j), _pair(j, k)) - (
            s.Qt(i, j, k) - qs[k]
        ) * (2 * (qs[i] - qs[j]))
        pr = comm_R((i, j, k), "epsilon", _pair(i, j)) - rhs
        co = comm_R((i, j, k), "plain", _pair(i, j)) - rhs
        out.append(
            _report(
                f"[R{i}{j}{k},Q{i}{j}]",
                pr,
                co,
                "R_ijk taken as [Q(ij),Q(jk)] without the extra sign factor",
            )
        )
    # components of fixed Q(ijk): the Racah-algebra form of the same relation
    triple_prod = {}
    for i, j, k in permutations((1, 2, 3, 4), 3):
        t = s.Qt(i, j, k)
        tkey = (tuple(sorted((i, j, k))), _pair(i, j))
        if tkey not in triple_prod:
            triple_prod[tkey] = t @ s.Qp(i, j)
        rhs = (
            P.prod(_pair(i, j), _pair(i, j)) * -2
            - P.anti(_pair(i, j), _pair(j, k)) * 2
            + (triple_prod[tkey] + s.Qp(i, j) * (qs[i] + qs[j] + qs[k])) * 2
            - (t - qs[k]) * (2 * (qs[i] - qs[j]))
        )
        out.append(
            _report(
                f"QR3-form:[R{i}{j}{k},Q{i}{j}]",
                comm_R((i, j, k), "epsilon", _pair(i, j)) - rhs,
                comm_R((i, j, k), "plain", _pair(i, j)) - rhs,
                "R_ijk taken as [Q(ij),Q(jk)] without the extra sign factor",
            )
        )
    # antisymmetry R_ijk = -R_jik over all ordered triples
    anti_printed = all(
        is_zero(P.R(i, j, k, "epsilon") + P.R(j, i, k, "epsilon")) for i, j, k in permutations((1, 2, 3, 4), 3)
    )
    anti_plain = all(
        is_zero(P.R(i, j, k, "plain") + P.R(j, i, k, "plain")) for i, j, k in permutations((1, 2, 3, 4), 3)
    )
    rep = RelationReport(
        "R_ijk = -R_jik",
        anti_printed,
        None if anti_printed else anti_plain,
        "with the sign factor R_ijk is symmetric in i, j; without it antisymmetric",
    )
    rep.candidates = {"printed": anti_printed, "corrected": anti_plain}
    out.append(rep)
    # Q(ijk) commutes with Q(ij), Q(ik), Q(jk)
    commute_ok = True
    for a, b, c in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
        t = s.Qt(a, b, c)
        for pr in ((a, b), (a, c), (b, c)):
            commute_ok &= bool(is_zero(commutator(t, s.Q[pr])))
    rep = RelationReport("[Q(ijk),Q(ij)] = 0", commute_ok, None, "")
    rep.candidates = {"printed": commute_ok}
    out.append(rep)
    return out


# --------------------------------------------------------------------------
# univariate QR(3)


def weights_from_params1(p):
    """Invert beta_k = 2(nu_1 + ... + nu_{k+1}) - 1."""
    b0, b1, b2 = p.betas
    return SU11Weights((b0 + 1) / 2, (b1 - b0) / 2, (b2 - b1) / 2)


def verify_univariate_qr3(p):
    """QR(3) for k1 = -kappa(x,(b1+1)/2)/2 and k2 = -Lambda/2 on {0..N}."""
    if not isinstance(p, RacahParams1):
        raise TypeError("expected RacahParams1")
    g = segment(p.N)
    n = len(g)
    I = OperatorMatrix.identity(n, g)
    k1 = OperatorMatrix.diagonal([-kappa(x, (p.beta1 + 1) / 2) / 2 for x in g], g)
    k2 = lambda1_matrix(p) * -HALF
    k3 = commutator(k1, k2)
    w = weights_from_params1(p)
    q1, q2, q3 = w.casimirs()
    nu = w.nu1 + w.nu2 + w.nu3 + p.N
    q = nu * (nu - 1)
    d = HALF * (q1 + q2 + q3 + q)
    e1 = -QUARTER * (q3 - q2) * (q1 - q)
    e2 = QUARTER * (q2 - q1) * (q3 - q)

    lhs1 = commutator(k2, k3)
    lhs2 = commutator(k3, k1)
    rhs1 = lambda dd, ee: k2 @ k2 + anticommutator(k1, k2) + k2 * dd + I * ee
    rhs2 = lambda dd, ee: k1 @ k1 + anticommutator(k1, k2) + k1 * dd + I * ee

    out = [
        _report("qr3:[k1,k2]=k3", commutator(k1, k2) - k3),
        _report("qr3:[k2,k3]", lhs1 - rhs1(d, e1)),
        _report("qr3:[k3,k1]", lhs2 - rhs2(d, e2)),
    ]
    bd, be1, be2 = qr3_constants(p)
    _, ce1, _ = qr3_constants(p, corrected=True)
    out.append(
        _report(
            "qr3-beta:[k2,k3]",
            lhs1 - rhs1(bd, be1),
            lhs1 - rhs1(bd, ce1),
            "beta-form e1: factor (b1-b0-c) in place of (b1+b0-c), c = (b2-b0)/2",
        )
    )
    out.append(_report("qr3-beta:[k3,k1]", lhs2 - rhs2(bd, be2)))
    consts = RelationReport(
        "qr3-beta=casimir-form",
        (bd, be1, be2) == (d, e1, e2),
        None if (bd, be1, be2) == (d, e1, e2) else (bd, ce1, be2) == (d, e1, e2),
        "beta-form constants against the Casimir-form constants",
    )
    out.append(consts)
    return out
