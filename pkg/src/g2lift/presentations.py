"""Rewrite systems for the algebra tower and their confluence certificates.

A Presentation holds, for each convex-ordered pair gamma < delta, the tail
element [x_gamma, x_delta]_c (so x_gamma x_delta rewrites to
bichar * x_delta x_gamma + tail), plus, for bounded quotients, a power tail
for each root (the element equal to x_alpha^{N_alpha}).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import engine
from .engine import (AlgebraElement, E_ZERO, G_ZERO, add_terms, deg, lmul,
                     mul_terms, qbracket, term_formal_degree)
from .errors import InadmissibleParameter, InternalInvariantError
from .rootdata import (BRACKET_DEF, NROOTS, RANK, ROOT_DEGREES, ROOT_NAMES,
                       DeformationParams, admissibility)
from .scalars import NPARAMS, PAR_ZERO

KINDS = ("prenichols", "nichols", "cleft-lambda", "cleft-lambda-mu",
         "lift-lambda", "lift-lambda-mu")

_LETTER_SYMBOL = {"prenichols": "x", "nichols": "x",
                  "cleft-lambda": "y", "cleft-lambda-mu": "y",
                  "lift-lambda": "a", "lift-lambda-mu": "a"}

G122 = (1, 2)
G11112 = (4, 1)


def _mono(exps=E_ZERO, grp=G_ZERO, l1=0, l2=0):
    par = [0] * NPARAMS
    par[0] = l1
    par[1] = l2
    return tuple(exps) + tuple(grp) + tuple(par)


def _letters(**kw):
    e = [0] * NROOTS
    for name, v in kw.items():
        e[RANK[name.lstrip("r")]] = v
    return tuple(e)


class Presentation:
    """One algebra of the tower, with its rewrite rules and term caches."""

    def __init__(self, kind, config, params, bracket, power):
        self.kind = kind
        self.config = config
        self.field = config.field
        self.params = params
        self.letter_symbol = _LETTER_SYMBOL[kind]
        self.bracket = bracket
        self.power = power
        self.bounded = kind in ("nichols", "cleft-lambda-mu", "lift-lambda-mu")
        self._lmul = {}
        self._prod = {}
        self._validate()

    # -- constructors of elements ------------------------------------------

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {engine.KEY_ONE: self.field.one})

    def monomial(self, exps=E_ZERO, grp=G_ZERO, par=PAR_ZERO, coeff=None):
        return AlgebraElement(
            self, {tuple(exps) + tuple(grp) + tuple(par):
                   self.field.one if coeff is None else coeff})

    def letter(self, name):
        e = [0] * NROOTS
        e[RANK[name]] = 1
        return self.monomial(e)

    def group(self, e1, e2):
        return self.monomial(grp=(e1, e2))

    def root_vector_bracketed(self, name):
        """The root vector as its defining iterated q-bracket of x1, x2."""
        if name in ("1", "2"):
            return self.letter(name)
        a, b = BRACKET_DEF[name]
        return qbracket(self.root_vector_bracketed(a), self.root_vector_bracketed(b))

    def word(self, tokens):
        """Reduce a raw word. Tokens: letters like x1/y12/abeta (any of the
        three symbols works), g1 g2 (G1 G2 for inverses), whitespace-split."""
        if isinstance(tokens, str):
            tokens = tokens.split()
        out = self.one()
        for tok in tokens:
            if tok in ("g1", "g2", "G1", "G2"):
                sgn = -1 if tok[0] == "G" else 1
                elem = self.group(sgn if tok[1] == "1" else 0,
                                  sgn if tok[1] == "2" else 0)
            else:
                name = tok.lstrip("xya")
                if name not in RANK:
                    raise ValueError(f"unknown token {tok!r}")
                elem = self.letter(name)
            out = out * elem
        return out

    def normal_form(self, elem):
        """Re-reduce an element (identity on normal input; used in tests)."""
        out = self.zero()
        for k, c in elem.terms.items():
            m = self.monomial(k[:6], k[6:8], k[8:])
            out = out + (m * self.one()).scaled(c)
        return out

    # -- invariants ----------------------------------------------------------

    def _validate(self):
        cfg = self.config
        for (i, j), tail in self.bracket.items():
            want = (ROOT_DEGREES[i][0] + ROOT_DEGREES[j][0],
                    ROOT_DEGREES[i][1] + ROOT_DEGREES[j][1])
            for key in tail:
                if term_formal_degree(cfg, key) != want:
                    raise InternalInvariantError(
                        f"bracket tail ({ROOT_NAMES[i]},{ROOT_NAMES[j]}) "
                        f"breaks formal degree")
        for r, tail in self.power.items():
            n = cfg.n_alpha_by_rank[r]
            want = (n * ROOT_DEGREES[r][0], n * ROOT_DEGREES[r][1])
            for key in tail:
                if term_formal_degree(cfg, key) != want:
                    raise InternalInvariantError(
                        f"power tail {ROOT_NAMES[r]} breaks formal degree")
                if self.bounded and any(
                        key[s] >= cfg.n_alpha_by_rank[s] for s in range(NROOTS)):
                    raise InternalInvariantError(
                        f"power tail {ROOT_NAMES[r]} not in normal form")


# ---------------------------------------------------------------------------
# rule tables


def generic_bracket_table(config, symbolic_field_ops=None):
    """Bracket tails for the (pre-)Nichols presentation at any braiding:
    the q-commuting pairs, the defining pairs, and the six mixed pairs."""
    f = config.field
    q = f.qpow(1)
    q12 = f.qpow(config.q12_exp)
    one = f.one

    def p(e):
        return f.qpow(e)

    def qm(k):  # 1 - q^k
        return f.sub(one, p(k))

    inv_q1 = f.inv(f.add(one, q))  # (q+1)^{-1}, a unit over Z for the Ns in play
    c_0_3 = f.mul(f.mul(q12, q), f.mul(f.neg(qm(3)), inv_q1))          # q12 q (q^3-1)/(q+1)
    c_1_3 = f.mul(f.mul(p(3), f.mul(q12, q12)),
                  f.mul(f.mul(f.neg(qm(1)), f.neg(qm(3))), inv_q1))    # q^3 q12^2 (q-1)(q^3-1)/(q+1)
    table = {
        (0, 1): {},
        (0, 2): {_mono(_letters(r1112=1)): one},
        (0, 3): {_mono(_letters(r112=2)): c_0_3},
        (0, 4): {_mono(_letters(r112=1)): one},
        (0, 5): {_mono(_letters(r12=1)): one},
        (1, 2): {},
        (1, 3): {_mono(_letters(r112=3)): c_1_3},
        (1, 4): {_mono(_letters(r112=2)): c_0_3},
        (1, 5): {_mono(_letters(rbeta=1)): f.mul(f.mul(q12, q),
                                                 f.sub(f.sub(p(2), q), one)),
                 _mono(_letters(r12=1, r112=1)): f.mul(f.mul(q12, q12),
                                                       f.mul(p(2), f.neg(qm(3))))},
        (2, 3): {},
        (2, 4): {_mono(_letters(rbeta=1)): one},
        (2, 5): {_mono(_letters(r12=2)): f.mul(f.mul(q12, q), f.neg(qm(2)))},
        (3, 4): {},
        (3, 5): {_mono(_letters(r12=3)): f.mul(f.mul(f.mul(q12, q12), p(3)),
                                               f.mul(f.neg(qm(2)), f.neg(qm(1))))},
        (4, 5): {},
    }
    return table


def _poly(f, pairs):
    """Sum of coeff*q^e from (coeff, e) pairs."""
    out = f.zero
    for c, e in pairs:
        out = f.add(out, f.mul_int(f.qpow(e), c))
    return out


def cleft_bracket_table(config):
    """Bracket tails of E(lambda) at the degenerate braiding (N=7, q12=q^3),
    with both deformation parameters formal."""
    f = config.field
    one = f.one

    def p(e):
        return f.qpow(e)

    def P(*pairs):
        return _poly(f, pairs)

    t_14 = {
        _mono(_letters(r112=2)): P((1, 0), (-1, 1), (1, 2), (-1, 3)),      # (q^2+1)(1-q)
        _mono(l1=1, exps=_letters(r2=1)): P((1, 4), (-1, 5), (1, 6), (-1, 7),
                                            (1, 8), (-1, 9)),             # q^4(1-q)(1+q^2+q^4)
    }
    table = {
        (0, 1): {_mono(l1=1): one},
        (0, 2): {_mono(_letters(r1112=1)): one},
        (0, 3): dict(t_14),
        (0, 4): {_mono(_letters(r112=1)): one},
        (0, 5): {_mono(_letters(r12=1)): one},
        (1, 2): {_mono(l1=1, exps=_letters(r12=1)): P((1, 0), (-1, 4))},   # (1-q^4)
        (1, 3): {
            # (q-1)(1-q^3)(1+q^3+q^5)
            _mono(_letters(r112=3)): P((-1, 0), (1, 1), (-1, 5), (2, 6), (-1, 7),
                                       (1, 8), (-1, 9)),
            _mono(l1=1, exps=_letters(r12=2)): P((1, 8), (-2, 7), (1, 6)),  # (q^4-q^3)^2
            _mono(l1=1, exps=_letters(r2=1, r112=1)):
                P((-1, 4), (2, 5), (-2, 6), (2, 7), (-1, 8)),               # -q^4(q-1)^2(q^2+1)
        },
        (1, 4): dict(t_14),
        (1, 5): {
            _mono(_letters(rbeta=1)): P((1, 6), (-1, 5), (-1, 4)),          # q^4(q^2-q-1)
            _mono(_letters(r12=1, r112=1)): P((1, 4), (-1, 1)),             # q(q^3-1)
        },
        (2, 3): {
            _mono(l1=1, l2=1): P((-3, 1), (-2, 2), (-2, 3), (-1, 4), (1, 6)),
            _mono(l1=1, exps=_letters(r2=1, r12=1)):
                P((1, 5), (-1, 6), (-1, 7), (1, 8)),                        # q^5(q+1)(q-1)^2
        },
        (2, 4): {_mono(_letters(rbeta=1)): one},
        (2, 5): {_mono(_letters(r12=2)): P((1, 6), (-1, 4))},               # q^4(q^2-1)
        (3, 4): {_mono(l1=1, exps=_letters(r2=2)): P((1, 6), (-2, 3), (1, 0))},  # (q^3-1)^2
        (3, 5): {_mono(_letters(r12=3)): P((1, 5), (-1, 4), (-1, 3), (1, 2))},   # q^2(q+1)(q-1)^2
        (4, 5): {_mono(l2=1): one},
    }
    return table


def lift_bracket_table(config):
    """Bracket tails of u(lambda) at the degenerate braiding."""
    f = config.field
    one = f.one

    def P(*pairs):
        return _poly(f, pairs)

    t_14 = {
        _mono(_letters(r112=2)): P((1, 0), (-1, 1), (1, 2), (-1, 3)),
        _mono(l1=1, exps=_letters(r2=1)): P((1, 4), (-1, 5), (1, 6), (-1, 7),
                                            (1, 8), (-1, 9)),
        _mono(l2=1, exps=_letters(r1=3), grp=G122): P((2, 1), (-2, 2), (-1, 4), (1, 6)),
    }
    table = {
        (0, 1): {_mono(l1=1): one, _mono(l1=1, grp=G11112): f.neg(one)},
        (0, 2): {_mono(_letters(r1112=1)): one},
        (0, 3): dict(t_14),
        (0, 4): {_mono(_letters(r112=1)): one},
        (0, 5): {_mono(_letters(r12=1)): one},
        (1, 2): {
            _mono(l1=1, exps=_letters(r12=1)): P((1, 0), (-1, 4)),
            _mono(l2=1, exps=_letters(r1=4), grp=G122): P((-1, 0), (3, 2), (1, 3), (1, 4), (3, 5)),
        },
        (1, 3): {
            _mono(_letters(r112=3)): P((-1, 0), (1, 1), (-1, 5), (2, 6), (-1, 7),
                                       (1, 8), (-1, 9)),
            _mono(l1=1, exps=_letters(r2=1, r112=1)):
                P((-1, 4), (2, 5), (-2, 6), (2, 7), (-1, 8)),
            _mono(l1=1, exps=_letters(r12=2)): P((1, 8), (-2, 7), (1, 6)),
            _mono(l2=1, exps=_letters(r1=2, r1112=1), grp=G122):
                P((-2, 2), (5, 4), (5, 5), (6, 6)),
            _mono(l2=1, exps=_letters(r1=3, r112=1), grp=G122):
                P((-3, 1), (-5, 3), (-4, 4), (-4, 5), (-5, 6)),
            _mono(l1=1, l2=1, exps=_letters(r1=1), grp=engine.addg(G122, G11112)):
                P((1, 0), (4, 1), (3, 2), (-1, 3)),
            _mono(l1=1, l2=1, exps=_letters(r1=1), grp=G122):
                P((4, 1), (-3, 2), (-4, 3), (-5, 4), (-7, 5), (1, 6)),
        },
        (1, 4): dict(t_14),
        (1, 5): {
            _mono(_letters(rbeta=1)): P((1, 6), (-1, 5), (-1, 4)),
            _mono(_letters(r12=1, r112=1)): P((1, 4), (-1, 1)),
            # (q^3-1)(1-q^4); forced by the q-Jacobi expansion through
            # [a112,a2]_c, see the confluence certificate
            _mono(l2=1, exps=_letters(r1=2), grp=G122): P((1, 3), (1, 4), (-2, 0)),
        },
        (2, 3): {
            _mono(l2=1, exps=_letters(r1=1, r1112=1), grp=G122):
                P((-2, 1), (-3, 2), (-4, 3), (-3, 4), (-2, 5)),
            _mono(l1=1, exps=_letters(r2=1, r12=1)): P((2, 1), (1, 2), (1, 3), (1, 4), (2, 5)),
            _mono(l1=1, l2=1, grp=engine.addg(G122, G11112)):
                P((2, 1), (2, 2), (1, 3), (3, 4), (4, 5), (2, 6)),
            _mono(l1=1, l2=1, grp=G122): P((1, 1), (1, 3), (-2, 4), (-4, 5), (-3, 6)),
            _mono(l1=1, l2=1): P((-3, 1), (-2, 2), (-2, 3), (-1, 4), (1, 6)),
        },
        (2, 4): {_mono(_letters(rbeta=1)): one},
        (2, 5): {
            _mono(_letters(r12=2)): P((1, 6), (-1, 4)),
            _mono(l2=1, exps=_letters(r1=1), grp=G122): P((1, 3), (-1, 0)),
        },
        (3, 4): {
            _mono(l2=1, exps=_letters(r1112=1), grp=G122): P((1, 4), (-1, 0)),
            _mono(l1=1, exps=_letters(r2=2)): P((1, 6), (-2, 3), (1, 0)),
            _mono(l2=1, exps=_letters(r1=1, r112=1), grp=G122): P((1, 8), (-2, 5), (1, 2)),
        },
        (3, 5): {
            _mono(_letters(r12=3)): P((1, 5), (-1, 4), (-1, 3), (1, 2)),
            _mono(l2=1, exps=_letters(r112=1), grp=G122): P((1, 1), (-1, 4)),
            _mono(l2=1, exps=_letters(r1=1, r12=1), grp=G122):
                P((1, 12), (-2, 8), (1, 4)),  # q^4(q^4-1)^2
        },
        (4, 5): {_mono(l2=1): one, _mono(l2=1, grp=G122): f.neg(one)},
    }
    return table


def _filter_params(table, params):
    """Drop terms carrying switched-off formal parameters."""
    out = {}
    for pair, tail in table.items():
        kept = {}
        for key, c in tail.items():
            if key[8] and not params.lam[0]:
                continue
            if key[9] and not params.lam[1]:
                continue
            kept[key] = c
        out[pair] = kept
    return out


def build(kind, config, params=None, power_tails=None):
    """Build a Presentation.

    Power tails for the bounded deformed quotients are supplied by the
    lifting machinery and normalized here against the lower power rules.
    """
    params = params or DeformationParams.none()
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    admissibility(params, config)
    deformed = kind.startswith(("cleft", "lift")) and any(params.lam)
    if deformed and not config.is_degenerate:
        raise InadmissibleParameter(
            "lambda-deformations require the degenerate braiding (N=7, a=3)")
    if deformed:
        raw = cleft_bracket_table(config) if kind.startswith("cleft") \
            else lift_bracket_table(config)
        bracket = _filter_params(raw, params)
    else:
        bracket = generic_bracket_table(config)

    if kind in ("prenichols", "cleft-lambda", "lift-lambda"):
        power = {}
    elif kind == "nichols":
        power = {r: {} for r in range(NROOTS)}
    else:
        if power_tails is None:
            raise ValueError(f"{kind} needs power tails from the lifting module")
        # normalize the injected tails against each other, in increasing
        # total degree (a tail only ever references strictly smaller powers)
        order = sorted(power_tails, key=lambda r: sum(
            config.n_alpha_by_rank[r] * d for d in ROOT_DEGREES[r]))
        norm = Presentation(kind, config, params, bracket, {})
        f = norm.field
        for r in order:
            reduced = {}
            for key, c in power_tails[r].items():
                m = engine.AlgebraElement(norm, {key: f.one})
                red = m * norm.one()
                for k2, c2 in red.terms.items():
                    engine._merge(reduced, k2, f.mul(c, c2), f)
            norm.power[r] = reduced
            norm._lmul.clear()
            norm._prod.clear()
        power = norm.power
    return Presentation(kind, config, params, bracket, power)


# ---------------------------------------------------------------------------
# confluence


@dataclass
class Ambiguity:
    description: str
    resolved: bool
    diff_terms: int


@dataclass
class OverlapReport:
    algebra: str
    entries: list = dc_field(default_factory=list)

    @property
    def all_resolved(self):
        return all(e.resolved for e in self.entries)

    def summary(self):
        bad = [e for e in self.entries if not e.resolved]
        return {"algebra": self.algebra, "ambiguities": len(self.entries),
                "unresolved": len(bad),
                "all_resolved": not bad,
                "failures": [e.description for e in bad]}


def _reduce_word(alg, ranks):
    """Engine reduction of a letter word given by ranks (left to right)."""
    f = alg.field
    cur = {engine.KEY_ONE: f.one}
    for r in reversed(ranks):
        nxt = {}
        for k, c in cur.items():
            kg, kp = k[6:8], k[8:]
            for k2, c2 in lmul(alg, r, k[:6]).items():
                key = k2[:6] + engine.addg(k2[6:8], kg) + engine.addp(k2[8:], kp)
                engine._merge(nxt, key, f.mul(c, c2), f)
        cur = nxt
    return cur


def _letter_elem(alg, r):
    e = [0] * NROOTS
    e[r] = 1
    return {tuple(e) + G_ZERO + PAR_ZERO: alg.field.one}


def _rule_step(alg, i, j):
    """One rewrite of x_i x_j (i < j): bichar * x_j x_i + tail."""
    s = alg.field.qpow(alg.config.bichar_exp(ROOT_DEGREES[i], ROOT_DEGREES[j]))
    return s, alg.bracket[(i, j)]


def check_local_confluence(alg):
    """Enumerate and resolve all overlap ambiguities of the rule system."""
    f = alg.field
    report = OverlapReport(alg.kind)

    def close(desc, A, B):
        d = add_terms(f, A, B, -1)
        report.entries.append(Ambiguity(desc, not d, len(d)))

    # bracket-bracket overlaps x_i x_j x_k, i < j < k
    for i in range(NROOTS):
        for j in range(i + 1, NROOTS):
            for k in range(j + 1, NROOTS):
                s_ij, t_ij = _rule_step(alg, i, j)
                s_jk, t_jk = _rule_step(alg, j, k)
                A = {key: f.mul(c, s_ij)
                     for key, c in _reduce_word(alg, [j, i, k]).items()}
                for key, c in mul_terms(alg, t_ij, _letter_elem(alg, k)).items():
                    engine._merge(A, key, c, f)
                B = {key: f.mul(c, s_jk)
                     for key, c in _reduce_word(alg, [i, k, j]).items()}
                for key, c in mul_terms(alg, _letter_elem(alg, i), t_jk).items():
                    engine._merge(B, key, c, f)
                close(f"x_{ROOT_NAMES[i]} x_{ROOT_NAMES[j]} x_{ROOT_NAMES[k]}", A, B)

    # power-rule overlaps
    for r in sorted(alg.power):
        n = alg.config.n_alpha_by_rank[r]
        tail = alg.power[r]
        # self overlap x_r^(n+1)
        A = mul_terms(alg, tail, _letter_elem(alg, r))
        B = mul_terms(alg, _letter_elem(alg, r), tail)
        close(f"x_{ROOT_NAMES[r]}^{n + 1}", A, B)
        for g in range(r):
            # x_g x_r^n : bracket first vs power first
            s, t = _rule_step(alg, g, r)
            A = {key: f.mul(c, s)
                 for key, c in _reduce_word(alg, [r, g] + [r] * (n - 1)).items()}
            for key, c in mul_terms(
                    alg, t, _reduce_word(alg, [r] * (n - 1))).items():
                engine._merge(A, key, c, f)
            B = mul_terms(alg, _letter_elem(alg, g), tail)
            close(f"x_{ROOT_NAMES[g]} x_{ROOT_NAMES[r]}^{n}", A, B)
        for d in range(r + 1, NROOTS):
            # x_r^n x_d : power first vs bracket at the junction
            s, t = _rule_step(alg, r, d)
            pref = _reduce_word(alg, [r] * (n - 1))
            inner = {key: f.mul(c, s)
                     for key, c in mul_terms(alg, _letter_elem(alg, d),
                                             _letter_elem(alg, r)).items()}
            for key, c in t.items():
                engine._merge(inner, key, c, f)
            B = mul_terms(alg, pref, inner)
            A = mul_terms(alg, tail, _letter_elem(alg, d))
            close(f"x_{ROOT_NAMES[r]}^{n} x_{ROOT_NAMES[d]}", A, B)
    return report


def jacobi_cross_check(alg):
    """Re-derive every non-defining bracket tail from the defining brackets
    through the braided Leibniz/Jacobi expansion and compare with the table.

    [[a,b],c] = [a,[b,c]] - bichar(a,b) b[a,c] + bichar(b,c) [a,c] b.
    Returns the list of pairs that fail (empty on success).
    """
    f = alg.field
    cfg = alg.config

    def br(u, v):
        return qbracket(u, v)

    letters = {name: alg.letter(name) for name in ROOT_NAMES}
    defining = {(RANK[a], RANK[b]) for a, b in BRACKET_DEF.values()}
    failures = []
    for (i, j) in sorted(alg.bracket):
        if (i, j) in defining:
            continue
        gi, gj = ROOT_NAMES[i], ROOT_NAMES[j]
        if gj in BRACKET_DEF:  # expand right argument
            a, b = BRACKET_DEF[gj]
            xa, xb, xg = letters[a], letters[b], letters[gi]
            da, db, dg = (ROOT_DEGREES[RANK[a]], ROOT_DEGREES[RANK[b]],
                          ROOT_DEGREES[i])
            s_ga = f.qpow(cfg.bichar_exp(dg, da))
            s_ab = f.qpow(cfg.bichar_exp(da, db))
            expansion = (br(br(xg, xa), xb)
                         + (xa * br(xg, xb)).scaled(s_ga)
                         - (br(xg, xb) * xa).scaled(s_ab))
        else:  # gi is non-simple, gj simple: expand left argument
            a, b = BRACKET_DEF[gi]
            xa, xb, xc = letters[a], letters[b], letters[gj]
            da, db, dc = (ROOT_DEGREES[RANK[a]], ROOT_DEGREES[RANK[b]],
                          ROOT_DEGREES[j])
            s_ab = f.qpow(cfg.bichar_exp(da, db))
            s_bc = f.qpow(cfg.bichar_exp(db, dc))
            expansion = (br(xa, br(xb, xc))
                         - (xb * br(xa, xc)).scaled(s_ab)
                         + (br(xa, xc) * xb).scaled(s_bc))
        direct = br(letters[gi], letters[gj])
        if expansion != direct:
            failures.append((gi, gj))
    return failures


# ---------------------------------------------------------------------------
# Hilbert series


def hilbert_series(alg, bound):
    """Graded count of normal-form letter monomials with alpha-degree within
    the (d1, d2) bound.  Valid once the presentation's overlaps resolve."""
    d1max, d2max = bound
    limits = []
    for r in range(NROOTS):
        if alg.bounded:
            limits.append(alg.config.n_alpha_by_rank[r] - 1)
        else:
            a, b = ROOT_DEGREES[r]
            lim = d1max // a if a else d2max // b
            limits.append(lim)
    counts = {}
    stack = [(0, 0, 0)]
    while stack:
        r, d1, d2 = stack.pop()
        if r == NROOTS:
            counts[(d1, d2)] = counts.get((d1, d2), 0) + 1
            continue
        a, b = ROOT_DEGREES[r]
        e = 0
        while e <= limits[r] and d1 + e * a <= d1max and d2 + e * b <= d2max:
            stack.append((r + 1, d1 + e * a, d2 + e * b))
            e += 1
    return dict(sorted(counts.items()))


def truncation_product_dims(config, bound):
    """Coefficients of prod_alpha (1 + t^deg + ... + t^((N_alpha-1) deg))."""
    d1max, d2max = bound
    poly = {(0, 0): 1}
    for r in range(NROOTS):
        a, b = ROOT_DEGREES[r]
        n = config.n_alpha_by_rank[r]
        nxt = {}
        for (x, y), c in poly.items():
            for e in range(n):
                xx, yy = x + e * a, y + e * b
                if xx <= d1max and yy <= d2max:
                    nxt[(xx, yy)] = nxt.get((xx, yy), 0) + c
        poly = nxt
    return dict(sorted(poly.items()))
