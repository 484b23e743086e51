"""The G2 root datum: six positive roots in convex order, braiding
configurations q11 = q, q22 = q^3, q12 = q^a, q21 = q^(-3-a), and the rank-2
free abelian realization group with its bicharacter."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import scalars
from .errors import InadmissibleParameter

# Convex order: alpha1 < 3a1+a2 < 2a1+a2 < 3a1+2a2 < a1+a2 < alpha2.
ROOT_NAMES = ("1", "1112", "112", "beta", "12", "2")
ROOT_DEGREES = ((1, 0), (3, 1), (2, 1), (3, 2), (1, 1), (0, 1))
NROOTS = 6
RANK = {name: i for i, name in enumerate(ROOT_NAMES)}

# Shirshov decompositions of the Lyndon words attached to non-simple roots.
SHIRSHOV = {"12": ("1", "2"), "112": ("1", "12"),
            "1112": ("1", "112"), "beta": ("112", "12")}

# Defining iterated brackets: root -> (left root, right root) with
# x_root = [x_left, x_right]_c.  Same data as SHIRSHOV for G2.
BRACKET_DEF = SHIRSHOV


@dataclass(frozen=True)
class Root:
    index: str

    @property
    def rank(self):
        return RANK[self.index]

    @property
    def alpha_degree(self):
        return ROOT_DEGREES[RANK[self.index]]


def degree_of_exps(exps):
    """Total alpha-degree (d1, d2) of a letter exponent vector."""
    d1 = d2 = 0
    for e, (a, b) in zip(exps, ROOT_DEGREES):
        if e:
            d1 += e * a
            d2 += e * b
    return (d1, d2)


# Formal alpha-degrees carried by the deformation parameters: lambda1 sits in
# degree (4,1) (the missing Serre word), lambda2 in (1,2); mu_alpha absorbs
# N_alpha * alpha (filled in per config).
LAMBDA_DEGREES = ((4, 1), (1, 2))


class BraidingConfig:
    """Fixed braiding for one session: N > 3 and the exponent a with
    q12 = q^a.  All derived scalars live in the shared QField(N)."""

    def __init__(self, N, a):
        if N <= 3:
            raise ValueError("N must exceed 3")
        self.N = N
        self.a = a % N
        self.M = N // gcd(N, 3)
        self.field = scalars.field(N)
        self.q12_exp = a % N
        self.q21_exp = (-3 - a) % N
        # is_degenerate: the unique braiding where the quantum Serre
        # relations admit deformations (q12, q21) = (q^3, q), only at N = 7.
        self.is_degenerate = (N == 7 and a % 7 == 3)
        nn = {0: N, 1: self.M, 2: N, 3: self.M, 4: N, 5: self.M}
        self.n_alpha_by_rank = tuple(nn[i] for i in range(NROOTS))
        # mu_alpha formal degrees: N_alpha * alpha_degree, in the parameter
        # slot order (m1, m2, m12, m112, m1112, mb)
        self.param_degrees = LAMBDA_DEGREES + tuple(
            (self.n_alpha_by_rank[r] * ROOT_DEGREES[r][0],
             self.n_alpha_by_rank[r] * ROOT_DEGREES[r][1])
            for r in (0, 5, 4, 2, 1, 3)
        )

    def n_alpha(self, root):
        return self.n_alpha_by_rank[RANK[root] if isinstance(root, str) else root]

    def bichar_exp(self, u, v):
        """Exponent e with bicharacter(u, v) = q^e (mod N)."""
        return (u[0] * v[0] + self.q12_exp * u[0] * v[1]
                + self.q21_exp * u[1] * v[0] + 3 * u[1] * v[1]) % self.N

    def bicharacter(self, u, v):
        return self.field.qpow(self.bichar_exp(u, v))

    def qpow(self, e):
        return self.field.qpow(e)

    def param_formal_degree(self, par):
        """Alpha-degree absorbed by a parameter exponent vector."""
        d1 = d2 = 0
        for e, (a, b) in zip(par, self.param_degrees):
            if e:
                d1 += e * a
                d2 += e * b
        return (d1, d2)

    def character_trivial(self, deg, power=1):
        """True iff chi_deg^power = epsilon, i.e. evaluates to 1 on g1, g2."""
        e1 = self.bichar_exp((1, 0), deg) * power % self.N
        e2 = self.bichar_exp((0, 1), deg) * power % self.N
        return e1 == 0 and e2 == 0

    def __repr__(self):
        return f"BraidingConfig(N={self.N}, a={self.a})"


@dataclass(frozen=True)
class DeformationParams:
    """Which deformation parameters are switched on (as formal symbols)."""

    lam: tuple = (False, False)
    mu: tuple = (False,) * NROOTS  # indexed by convex rank

    @classmethod
    def none(cls):
        return cls()

    @classmethod
    def generic(cls, mu_on=True):
        return cls(lam=(False, False), mu=(mu_on,) * NROOTS)

    @classmethod
    def degenerate(cls, mu_on=True):
        return cls(lam=(True, True), mu=(mu_on,) * NROOTS)


def admissible_params(config, lam=False):
    """The maximal admissible parameter set at this braiding: all mu's whose
    character condition holds, plus both lambdas when requested and allowed."""
    report = admissibility(DeformationParams.none(), config)
    mu = tuple(bool(report[f"mu_{name}"]) for name in ROOT_NAMES)
    lam_flags = (bool(lam and report["l1"]), bool(lam and report["l2"]))
    return DeformationParams(lam=lam_flags, mu=mu)


def admissibility(params, config):
    """Decide admissibility of each switched-on parameter.

    Group conditions (g_alpha^{N_alpha} = 1, g_11112 = 1, g_122 = 1) never
    trigger over the free abelian realization group; character conditions
    are evaluated through bicharacter powers.  Returns a report dict; raises
    InadmissibleParameter for a switched-on inadmissible coordinate.
    """
    report = {}
    lam_degrees = ((4, 1), (1, 2))
    for i in (0, 1):
        ok = config.character_trivial(lam_degrees[i])
        report[f"l{i + 1}"] = ok
        if params.lam[i] and not ok:
            raise InadmissibleParameter(
                f"l{i + 1} must vanish: chi is nontrivial at N={config.N}, a={config.a}")
    for r, name in enumerate(ROOT_NAMES):
        ok = config.character_trivial(ROOT_DEGREES[r], power=config.n_alpha_by_rank[r])
        report[f"mu_{name}"] = ok
        if params.mu[r] and not ok:
            raise InadmissibleParameter(
                f"mu_{name} must vanish: chi_alpha^N_alpha is nontrivial "
                f"at N={config.N}, a={config.a}")
    return report
