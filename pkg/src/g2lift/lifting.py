"""The lifting pipeline: cleft sections by triangular solve, the deformed
power relations of the cleft algebra, the lifted power relations, the
closed-form generic presentation, and coefficient-exact comparison against
ingested reference relation lists."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from . import engine, presentations, structure
from .engine import AlgebraElement, ComoduleMap, E_ZERO, G_ZERO, TensorElement, deg
from .errors import LiftSolveFailure, SectionSolveFailure
from .rootdata import NROOTS, RANK, ROOT_DEGREES, ROOT_NAMES, DeformationParams
from .scalars import NPARAMS, PAR_ZERO, PARAMS, Scalar, parse_scalar

# parameter slot of mu_alpha, by root name
MU_INDEX = {"1": 2, "2": 3, "12": 4, "112": 5, "1112": 6, "beta": 7}

SECTION_ORDER = ("1", "2", "12", "1112", "112", "beta")


def _mu_key(root, count=1):
    par = [0] * NPARAMS
    par[MU_INDEX[root]] = count
    return tuple(par)


def rho_map(cleft, H):
    """rho: A(lambda) -> A(lambda) (x) H', y_i -> y_i (x) 1 + g_i (x) x_i."""
    return ComoduleMap(cleft, cleft, H,
                       structure._gen_image(cleft, H, RANK["1"]),
                       structure._gen_image(cleft, H, RANK["2"]))


def delta_map(lift, target):
    """delta: A -> u(lambda) (x) target, a_i (x) 1 + g_i (x) y_i; taking
    target = E(lambda, mu) applies the projection tau on right legs."""
    return ComoduleMap(lift, lift, target,
                       structure._gen_image(lift, target, RANK["1"]),
                       structure._gen_image(lift, target, RANK["2"]))


def _right_letter_degree(key):
    d = deg(key[8:14])
    return d[0] + d[1]


def section_gamma(root, cleft, H, rho, sections, dmap=None):
    """Solve rho(G) = (gamma-hat (x) id) Delta(x_root^{N_root}) for G.

    gamma-hat replaces each full root-vector power in a left leg by its
    known section, multiplicatively; the solver then peels residual terms
    by maximal right-leg letter degree.  Raises SectionSolveFailure when a
    residual term cannot come from any candidate monomial (wrong dependency
    order or a broken rule table)."""
    f = cleft.field
    cfg = cleft.config
    r = RANK[root]
    n = cfg.n_alpha_by_rank[r]
    D = structure.power_coproduct(H, root, dmap)
    lead_key = None
    w_mid = {}
    for key, c in D.terms.items():
        le, lg, re, rg, par = key[:6], key[6:8], key[8:14], key[14:16], key[16:]
        if not any(re) and rg == G_ZERO:  # x_root^n (x) 1
            lead_key = key
            continue
        gh = None  # gamma-hat of the left leg
        for s in range(NROOTS - 1, -1, -1):
            if not le[s]:
                continue
            ns = cfg.n_alpha_by_rank[s]
            if le[s] % ns:
                raise SectionSolveFailure(
                    f"left leg of Delta(x_{root}^{n}) has a partial power "
                    f"x_{ROOT_NAMES[s]}^{le[s]}")
            name = ROOT_NAMES[s]
            if name not in sections:
                raise SectionSolveFailure(
                    f"section for {name} needed by {root} is not available "
                    f"(dependency order violated)")
            blk = sections[name]
            for _ in range(le[s] // ns):
                gh = blk if gh is None else gh * blk
        gh = gh if gh is not None else cleft.one()
        if lg != G_ZERO:
            gh = gh * cleft.group(*lg)
        for k2, c2 in gh.terms.items():
            kk = k2[:8] + re + rg + engine.addp(k2[8:], par)
            engine._merge(w_mid, kk, f.mul(c, c2), f)
    if lead_key is None:
        raise SectionSolveFailure(f"Delta(x_{root}^{n}) misses its leading term")

    def F(exps, grp):
        """rho(monomial) - monomial (x) 1 as a raw term dict."""
        img = rho._mono_image(exps, grp)
        out = dict(img.terms)
        own = tuple(exps) + tuple(grp) + E_ZERO + G_ZERO + PAR_ZERO
        engine._merge(out, own, f.neg(f.one), f)
        return out

    lead = [0] * NROOTS
    lead[r] = n
    lead = tuple(lead)
    correction = {}  # candidate G = y_root^n + correction
    residual = dict(w_mid)
    for key, c in F(lead, G_ZERO).items():
        engine._merge(residual, key, f.neg(c), f)
    # now need F(correction) == residual
    guard = 0
    while residual:
        guard += 1
        if guard > 4096:
            raise SectionSolveFailure(f"section solve for {root} does not terminate")
        top = max(_right_letter_degree(k) for k in residual)
        if top == 0:
            raise SectionSolveFailure(
                f"section solve for {root}: residual has trivial right legs")
        batch = [(k, c) for k, c in residual.items()
                 if _right_letter_degree(k) == top]
        for key, c in batch:
            if key not in residual:
                continue
            le, lg, re, rg, par = key[:6], key[6:8], key[8:14], key[14:16], key[16:]
            if any(le) or rg != G_ZERO:
                raise SectionSolveFailure(
                    f"section solve for {root}: maximal residual term is not "
                    f"of the form (group) (x) (letters)")
            if lg != deg(re):
                raise SectionSolveFailure(
                    f"section solve for {root}: group mismatch in residual")
            mono = re  # correction monomial exponents (group-free), params par
            ckey = mono + G_ZERO + par
            engine._merge(correction, ckey, c, f)
            for k2, c2 in F(mono, G_ZERO).items():
                kk = k2[:16] + engine.addp(k2[16:], par)
                engine._merge(residual, kk, f.neg(f.mul(c, c2)), f)
    gterms = dict(correction)
    engine._merge(gterms, lead + G_ZERO + PAR_ZERO, f.one, f)
    return AlgebraElement(cleft, gterms)


def solve_sections(cleft, H):
    """All six sections, in the dependency order validated at runtime."""
    rho = rho_map(cleft, H)
    dmap = structure.coproduct_map(H)
    sections = {}
    for root in SECTION_ORDER:
        sections[root] = section_gamma(root, cleft, H, rho, sections, dmap)
    return sections, rho


def verify_section(root, cleft, H, rho, sections, dmap=None):
    """Post-hoc certificate: rho(gamma(r)) == (gamma-hat (x) id) Delta(r)."""
    f = cleft.field
    cfg = cleft.config
    G = sections[root]
    lhs = rho.apply(G)
    D = structure.power_coproduct(H, root, dmap)
    rhs = {}
    for key, c in D.terms.items():
        le, lg, re, rg, par = key[:6], key[6:8], key[8:14], key[14:16], key[16:]
        if not any(le + lg):
            gh = cleft.one()
        else:
            gh = None
            for s in range(NROOTS - 1, -1, -1):
                if le[s]:
                    blk = sections[ROOT_NAMES[s]]
                    for _ in range(le[s] // cfg.n_alpha_by_rank[s]):
                        gh = blk if gh is None else gh * blk
            gh = gh if gh is not None else cleft.one()
            if lg != G_ZERO:
                gh = gh * cleft.group(*lg)
        for k2, c2 in gh.terms.items():
            kk = k2[:8] + re + rg + engine.addp(k2[8:], par)
            engine._merge(rhs, kk, f.mul(c, c2), f)
    return lhs.terms == rhs


@dataclass
class Relation:
    root: str
    power: int
    rhs: dict  # raw term map over the ambient presentation

    def sorted_terms(self):
        return sorted(self.rhs.items(), key=lambda kv: (kv[0][8:], kv[0][6:8], kv[0][:6]))


def cleft_power_tails(cleft, sections, params):
    """Power tails of E(lambda, mu): y_alpha^{N_alpha} = mu_alpha - corrections."""
    f = cleft.field
    tails = {}
    for root, G in sections.items():
        r = RANK[root]
        n = cleft.config.n_alpha_by_rank[r]
        lead = [0] * NROOTS
        lead[r] = n
        lead = tuple(lead) + G_ZERO + PAR_ZERO
        tail = {}
        if params.mu[r]:
            tail[E_ZERO + G_ZERO + _mu_key(root)] = f.one
        for key, c in G.terms.items():
            if key == lead:
                continue
            engine._merge(tail, key, f.neg(c), f)
        tails[r] = tail
    return tails


def cleft_relations(cleft, sections, params):
    """The emitted presentation of E(lambda, mu), Prop.-4.8 style: the two
    deformed Serre-level relations plus the six power relations."""
    f = cleft.field
    rels = []
    serre1 = {E_ZERO + G_ZERO + (1, 0, 0, 0, 0, 0, 0, 0): f.one} if params.lam[0] else {}
    serre2 = {E_ZERO + G_ZERO + (0, 1, 0, 0, 0, 0, 0, 0): f.one} if params.lam[1] else {}
    rels.append(Relation("11112", 1, serre1))
    rels.append(Relation("serre-12-2", 1, serre2))
    tails = cleft_power_tails(cleft, sections, params)
    for root in ROOT_NAMES:
        r = RANK[root]
        rels.append(Relation(root, cleft.config.n_alpha_by_rank[r], dict(tails[r])))
    return rels


def lift_relation(root, lift, cleft, emu, sections, dmap_delta, params,
                  reduce_in=None):
    """Solve for r-tilde and emit a_root^{N} = mu(1 - g^N) - lower terms.

    With reduce_in set (a bounded lift presentation holding the power rules
    of the other roots), the right-hand side is additionally normalized
    there; the source's beta relation is displayed in that reduced form,
    while the other five keep raw a1-powers."""
    f = lift.field
    cfg = lift.config
    r = RANK[root]
    n = cfg.n_alpha_by_rank[r]
    gamma = sections[root]
    # (id (x) tau) delta(gamma(r)): right legs are already reduced in E(lambda, mu)
    X = dmap_delta.apply(AlgebraElement(cleft, gamma.terms))
    # tau(gamma(r)) must be exactly mu_root
    tau_gamma = emu.normal_form(AlgebraElement(emu, dict(gamma.terms)))
    mu_on = params.mu[r]
    expect = {E_ZERO + G_ZERO + _mu_key(root): f.one} if mu_on else {}
    if tau_gamma.terms != expect:
        raise LiftSolveFailure(
            f"tau(gamma(x_{root}^{n})) != mu_{root}: {tau_gamma!r}")
    d = ROOT_DEGREES[r]
    gkey = (E_ZERO + (n * d[0], n * d[1]) + E_ZERO + G_ZERO
            + (_mu_key(root) if mu_on else PAR_ZERO))
    terms = dict(X.terms)
    if mu_on:
        engine._merge(terms, gkey, f.neg(f.one), f)
    rtilde = {}
    for key, c in terms.items():
        if any(key[8:16]):
            raise LiftSolveFailure(
                f"r-tilde solve for {root}: nontrivial right leg "
                f"{key[8:14]} grp{key[14:16]} survives")
        rtilde[key[:8] + key[16:]] = c
    lead = [0] * NROOTS
    lead[r] = n
    lead_key = tuple(lead) + G_ZERO + PAR_ZERO
    cl = rtilde.pop(lead_key, None)
    if cl is None or not f.is_zero(f.sub(cl, f.one)):
        raise LiftSolveFailure(f"r-tilde for {root} misses unit leading a-power")
    rhs = {}
    if mu_on:
        rhs[E_ZERO + G_ZERO + _mu_key(root)] = f.one
        rhs[E_ZERO + (n * d[0], n * d[1]) + _mu_key(root)] = f.neg(f.one)
    for key, c in rtilde.items():
        engine._merge(rhs, key, f.neg(c), f)
    if reduce_in is not None:
        reduced = {}
        for key, c in rhs.items():
            m = AlgebraElement(reduce_in, {key: f.one})
            red = m * reduce_in.one()
            for k2, c2 in red.terms.items():
                engine._merge(reduced, k2, f.mul(c, c2), f)
        rhs = reduced
    return Relation(root, n, rhs)


def generic_relations(H, params):
    """Closed generic presentation from the power coproducts:
    a_alpha^{N_alpha} = mu_alpha (1 - g_alpha^{N_alpha}) - u_alpha(mu),
    u_alpha(mu) = sum r_{n,m} tau_mu(x^m) a^{n N} g^{m N}."""
    f = H.field
    cfg = H.config
    dmap = structure.coproduct_map(H)
    rels = [Relation("11112", 1, {}), Relation("serre-12-2", 1, {})]
    for root in ROOT_NAMES:
        r = RANK[root]
        n = cfg.n_alpha_by_rank[r]
        d = ROOT_DEGREES[r]
        D = structure.power_coproduct(H, root, dmap)
        rhs = {}
        if params.mu[r]:
            rhs[E_ZERO + G_ZERO + _mu_key(root)] = f.one
            rhs[E_ZERO + (n * d[0], n * d[1]) + _mu_key(root)] = f.neg(f.one)
        lead = [0] * NROOTS
        lead[r] = n
        lead = tuple(lead)
        for key, c in D.terms.items():
            le, lg, re, rg = key[:6], key[6:8], key[8:14], key[14:16]
            if le == lead and lg == G_ZERO:
                continue
            if not any(le) and re == lead:
                continue  # g^N (x) x^N co-leading term
            par = [0] * NPARAMS
            dead = False
            for s in range(NROOTS):
                if re[s]:
                    k, rem = divmod(re[s], cfg.n_alpha_by_rank[s])
                    if rem:
                        raise LiftSolveFailure(
                            f"middle term of Delta(x_{root}^{n}) has partial "
                            f"right power x_{ROOT_NAMES[s]}^{re[s]}")
                    if not params.mu[s]:
                        dead = True
                        break
                    par[MU_INDEX[ROOT_NAMES[s]]] += k
            if dead:
                continue
            kk = le + lg + tuple(par)
            engine._merge(rhs, kk, f.neg(c), f)
        rels.append(Relation(root, n, rhs))
    return rels


# ---------------------------------------------------------------------------
# reference comparison


@dataclass
class RelationDiff:
    root: str
    missing: list
    extra: list
    wrong: list

    @property
    def match(self):
        return not (self.missing or self.extra or self.wrong)


@dataclass
class ComparisonReport:
    name: str
    diffs: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def match(self):
        return all(d.match for d in self.diffs)

    def summary(self):
        return {
            "reference": self.name,
            "match": self.match,
            "notes": self.notes,
            "relations": [
                {"root": d.root, "match": d.match,
                 "missing": d.missing, "extra": d.extra, "wrong": d.wrong}
                for d in self.diffs
            ],
        }


def reference_terms(ref_rel, field, config, table=None):
    """Expand one reference relation into a raw term map."""
    out = {}
    for item in ref_rel["rhs"]:
        sc = parse_scalar(item["coef"], field,
                          q12_exp=config.q12_exp, q21_exp=config.q21_exp)
        if "table" in item:
            tv = table.values[item["table"]]
            sc = sc * Scalar.from_cyc(field, tv)
        exps = tuple(item["exps"])
        grp = tuple(item["grp"])
        for par, c in sc.terms.items():
            key = exps + grp + par
            engine._merge(out, key, c, field)
    return out


def compare(relations, reference, field, config, table=None, roots=None,
            spot_keys=None):
    """Monomial-by-monomial diff of computed relations against a reference.

    roots restricts the comparison; spot_keys maps a root name to a list of
    term keys, restricting that root's diff to the named coefficients."""
    rep = ComparisonReport(reference.get("name", "reference"))
    rep.notes.extend(reference.get("notes", []))
    by_root = {rel.root: rel for rel in relations}
    for ref_rel in reference["relations"]:
        root = ref_rel["root"]
        if roots is not None and root not in roots:
            continue
        want = reference_terms(ref_rel, field, config, table)
        got = dict(by_root[root].rhs) if root in by_root else {}
        keys = spot_keys.get(root) if spot_keys else None
        if keys is not None:
            want = {k: v for k, v in want.items() if k in keys}
            got = {k: v for k, v in got.items() if k in keys}
        missing, extra, wrong = [], [], []
        for k, v in want.items():
            g = got.get(k)
            if g is None:
                missing.append(_term_str(field, k, v))
            elif g != v:
                wrong.append(f"{_term_str(field, k, g)} != ref {field.emit(v)}")
        for k, g in got.items():
            if k not in want:
                extra.append(_term_str(field, k, g))
        rep.diffs.append(RelationDiff(root, missing, extra, wrong))
    return rep


def _term_str(field, key, c):
    sc = Scalar(field, {key[8:16]: c})
    return f"{sc.emit()} * {engine.monomial_str(key, 'a')}"


# ---------------------------------------------------------------------------
# session orchestrator


class LiftingSession:
    """Lazily builds the full tower at one braiding and memoizes the
    expensive intermediate objects."""

    def __init__(self, config, params=None):
        self.config = config
        self.field = config.field
        if params is None:
            params = (DeformationParams.degenerate() if config.is_degenerate
                      else DeformationParams.generic())
        self.params = params
        self._cache = {}

    def _get(self, name, builder):
        if name not in self._cache:
            self._cache[name] = builder()
        return self._cache[name]

    @property
    def prenichols(self):
        return self._get("H", lambda: presentations.build("prenichols", self.config))

    @property
    def nichols(self):
        return self._get("Hn", lambda: presentations.build("nichols", self.config))

    @property
    def cleft(self):
        lam = DeformationParams(lam=self.params.lam, mu=(False,) * NROOTS)
        return self._get("A", lambda: presentations.build(
            "cleft-lambda", self.config, lam))

    @property
    def lift(self):
        lam = DeformationParams(lam=self.params.lam, mu=(False,) * NROOTS)
        return self._get("u", lambda: presentations.build(
            "lift-lambda", self.config, lam))

    def sections(self):
        def make():
            secs, rho = solve_sections(self.cleft, self.prenichols)
            return secs, rho
        return self._get("sections", make)

    @property
    def cleft_mu(self):
        def make():
            secs, _ = self.sections()
            tails = cleft_power_tails(self.cleft, secs, self.params)
            return presentations.build("cleft-lambda-mu", self.config,
                                       self.params, power_tails=tails)
        return self._get("Emu", make)

    def delta(self):
        return self._get("delta", lambda: delta_map(self.lift, self.cleft_mu))

    def cleft_presentation(self):
        secs, _ = self.sections()
        return cleft_relations(self.cleft, secs, self.params)

    def lift_presentation(self, roots=ROOT_NAMES, reduce_beta=True):
        """Emitted relations; the beta relation is normalized modulo the
        other five power relations (the form the degenerate reference uses)
        unless reduce_beta is False."""
        secs, _ = self.sections()
        dm = self.delta()
        out = []
        for root in roots:
            red = None
            if root == "beta" and reduce_beta and self.config.is_degenerate:
                red = self.lift_mu_partial()
            out.append(lift_relation(root, self.lift, self.cleft, self.cleft_mu,
                                     secs, dm, self.params, reduce_in=red))
        return out

    def lift_mu_partial(self):
        """Bounded lift presentation carrying the power rules of the five
        roots other than beta (enough to normalize the beta relation)."""
        def make():
            secs, _ = self.sections()
            dm = self.delta()
            tails = {}
            for root in ("1", "2", "12", "1112", "112"):
                rel = lift_relation(root, self.lift, self.cleft, self.cleft_mu,
                                    secs, dm, self.params)
                tails[RANK[root]] = dict(rel.rhs)
            return presentations.build("lift-lambda-mu", self.config,
                                       self.params, power_tails=tails)
        return self._get("lift_mu_partial", make)

    def generic_presentation(self):
        return generic_relations(self.prenichols, self.params)

    def lift_power_tails(self, relations=None):
        """Power tails of u(lambda, mu) from the emitted relations."""
        f = self.field
        tails = {}
        for rel in relations or self.lift_presentation():
            if rel.root not in RANK:
                continue
            tails[RANK[rel.root]] = dict(rel.rhs)
        return tails


def load_reference(path):
    with open(path) as fh:
        return json.load(fh)
