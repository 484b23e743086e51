"""PBW normal-form kernel.

Monomials are flat int tuples: 6 letter exponents in convex rank order
(x1, x1112, x112, x_beta, x12, x2), 2 group exponents (g1, g2), 8 formal
parameter exponents.  A monomial with letter exponents (n1, ..., n2) denotes
the descending product x2^n2 x12^n12 x_beta^nb x112^n112 x1112^n1112 x1^n1
followed by the group element; parameters are central scalars.

Elements are dicts {key16: field element}; tensor elements are dicts
{key24: field element} with the parameter slot shared between the legs.
All reductions route through two memoized kernels: ``lmul`` (letter times
normal monomial) and ``prod`` (normal word times normal word).
"""

from __future__ import annotations

import sys

from . import rootdata
from .errors import AlgebraMismatch, InhomogeneousBracket
from .rootdata import NROOTS, RANK, ROOT_DEGREES, ROOT_NAMES
from .scalars import NPARAMS, PAR_ZERO, Scalar

sys.setrecursionlimit(100000)

E_ZERO = (0,) * NROOTS
G_ZERO = (0, 0)
KEY_ONE = E_ZERO + G_ZERO + PAR_ZERO


def deg(exps):
    return (exps[0] + 3 * exps[1] + 2 * exps[2] + 3 * exps[3] + exps[4],
            exps[1] + exps[2] + 2 * exps[3] + exps[4] + exps[5])


def addg(g, h):
    return (g[0] + h[0], g[1] + h[1])


def addp(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3],
            p[4] + q[4], p[5] + q[5], p[6] + q[6], p[7] + q[7])


def _merge(out, key, val, f):
    prev = out.get(key)
    if prev is None:
        out[key] = val
    else:
        s = f.add(prev, val)
        if f.is_zero(s):
            del out[key]
        else:
            out[key] = s


# ---------------------------------------------------------------------------
# reduction kernels


def lmul(alg, r, e):
    """x_r * (normal letter word e) as a term dict, memoized per algebra."""
    cache = alg._lmul
    ck = (r, e)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    f = alg.field
    h = NROOTS - 1
    while h >= 0 and e[h] == 0:
        h -= 1
    if h < 0 or r > h:
        ee = list(e)
        ee[r] = 1 if h < 0 else e[r] + 1
        out = {tuple(ee) + G_ZERO + PAR_ZERO: f.one}
    elif r == h:
        k = e[r] + 1
        if alg.bounded and r in alg.power and k == alg.config.n_alpha_by_rank[r]:
            rest = list(e)
            rest[r] = 0
            out = elem_mul_letters(alg, alg.power[r], tuple(rest))
        else:
            ee = list(e)
            ee[r] = k
            out = {tuple(ee) + G_ZERO + PAR_ZERO: f.one}
    else:
        e1 = list(e)
        e1[h] -= 1
        e1 = tuple(e1)
        s = f.qpow(alg.config.bichar_exp(ROOT_DEGREES[r], ROOT_DEGREES[h]))
        out = {}
        for k1, c1 in lmul(alg, r, e1).items():
            sc = f.mul(s, c1)
            kg, kp = k1[6:8], k1[8:]
            for k2, c2 in lmul(alg, h, k1[:6]).items():
                key = k2[:6] + addg(k2[6:8], kg) + addp(k2[8:], kp)
                _merge(out, key, f.mul(sc, c2), f)
        tail = alg.bracket.get((r, h))
        if tail:
            for key, c in elem_mul_letters(alg, tail, e1).items():
                _merge(out, key, c, f)
    cache[ck] = out
    return out


def prod(alg, e1, e2):
    """(normal word e1) * (normal word e2) as a term dict, memoized."""
    cache = alg._prod
    ck = (e1, e2)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    f = alg.field
    cur = {e2 + G_ZERO + PAR_ZERO: f.one}
    for r in range(NROOTS):
        for _ in range(e1[r]):
            nxt = {}
            for k, c in cur.items():
                kg, kp = k[6:8], k[8:]
                for k2, c2 in lmul(alg, r, k[:6]).items():
                    key = k2[:6] + addg(k2[6:8], kg) + addp(k2[8:], kp)
                    _merge(nxt, key, f.mul(c, c2), f)
            cur = nxt
    cache[ck] = cur
    return cur


def elem_mul_letters(alg, elem, e2):
    """(term dict) * (letter word e2)."""
    f = alg.field
    if not any(e2):
        return dict(elem)
    d2 = deg(e2)
    out = {}
    for k, c in elem.items():
        kg, kp = k[6:8], k[8:]
        if kg != G_ZERO:
            c = f.mul(c, f.qpow(alg.config.bichar_exp(kg, d2)))
        for k2, c2 in prod(alg, k[:6], e2).items():
            key = k2[:6] + addg(k2[6:8], kg) + addp(k2[8:], kp)
            _merge(out, key, f.mul(c, c2), f)
    return out


def mul_terms(alg, A, B):
    """General product of two term dicts."""
    f = alg.field
    out = {}
    for k1, c1 in A.items():
        e1, g1, p1 = k1[:6], k1[6:8], k1[8:]
        for k2, c2 in B.items():
            e2, g2, p2 = k2[:6], k2[6:8], k2[8:]
            c = f.mul(c1, c2)
            if g1 != G_ZERO and any(e2):
                c = f.mul(c, f.qpow(alg.config.bichar_exp(g1, deg(e2))))
            g = addg(g1, g2)
            p = addp(p1, p2)
            for k3, c3 in prod(alg, e1, e2).items():
                key = k3[:6] + addg(k3[6:8], g) + addp(k3[8:], p)
                _merge(out, key, f.mul(c, c3), f)
    return out


def scale_terms(f, A, c):
    if f.is_zero(c):
        return {}
    return {k: f.mul(v, c) for k, v in A.items()}


def add_terms(f, A, B, sign=1):
    out = dict(A)
    for k, v in B.items():
        _merge(out, k, v if sign > 0 else f.neg(v), f)
    return out


def term_formal_degree(config, key):
    """Letter alpha-degree plus formal parameter degree of a term key."""
    d = deg(key[:6])
    pd = config.param_formal_degree(key[8:16])
    return (d[0] + pd[0], d[1] + pd[1])


# ---------------------------------------------------------------------------
# element classes


class AlgebraElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = terms if terms is not None else {}

    def copy(self):
        return AlgebraElement(self.alg, dict(self.terms))

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.alg is not other.alg:
            raise AlgebraMismatch(
                f"elements of {self.alg.kind} and {other.alg.kind} cannot be combined")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, add_terms(self.alg.field, self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, add_terms(self.alg.field, self.terms, other.terms, -1))

    def __neg__(self):
        f = self.alg.field
        return AlgebraElement(self.alg, {k: f.neg(v) for k, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, mul_terms(self.alg, self.terms, other.terms))

    def scaled(self, c):
        """Multiply by a field element (cyc tuple) or a Scalar."""
        f = self.alg.field
        if isinstance(c, Scalar):
            out = {}
            for par, cyc in c.terms.items():
                for k, v in self.terms.items():
                    key = k[:8] + addp(k[8:], par)
                    _merge(out, key, f.mul(v, cyc), f)
            return AlgebraElement(self.alg, out)
        return AlgebraElement(self.alg, scale_terms(f, self.terms, c))

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.alg is other.alg
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    def formal_degree(self):
        """Common (letters + parameters) alpha-degree; None if inhomogeneous."""
        degs = {term_formal_degree(self.alg.config, k) for k in self.terms}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else (0, 0)

    def letter_degrees(self):
        return {deg(k[:6]) for k in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][8:], kv[0][6:8], kv[0][:6]))

    def to_json(self):
        out = []
        for k, c in self.sorted_terms():
            s = Scalar(self.alg.field, {k[8:16]: c})
            out.append({"exps": list(k[:6]), "grp": list(k[6:8]), "coef": s.emit()})
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, c in self.sorted_terms()[:12]:
            mono = monomial_str(k, self.alg.letter_symbol)
            bits.append(f"({Scalar(self.alg.field, {k[8:16]: c}).emit()})*{mono}")
        more = "" if len(self.terms) <= 12 else f" ... ({len(self.terms)} terms)"
        return " + ".join(bits) + more


def monomial_str(key, sym="x"):
    parts = []
    for r in range(NROOTS - 1, -1, -1):
        e = key[r]
        if e:
            name = ROOT_NAMES[r]
            parts.append(f"{sym}{name}" + (f"^{e}" if e > 1 else ""))
    g1, g2 = key[6:8]
    if g1:
        parts.append(f"g1^{g1}" if g1 != 1 else "g1")
    if g2:
        parts.append(f"g2^{g2}" if g2 != 1 else "g2")
    return " ".join(parts) if parts else "1"


class TensorElement:
    """Sparse element of (left algebra) x (right algebra), parameters shared."""

    __slots__ = ("algL", "algR", "terms")

    def __init__(self, algL, algR, terms=None):
        self.algL = algL
        self.algR = algR
        self.terms = terms if terms is not None else {}

    def _check(self, other):
        if self.algL is not other.algL or self.algR is not other.algR:
            raise AlgebraMismatch("tensor legs do not match")

    @property
    def field(self):
        return self.algL.field

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        return TensorElement(self.algL, self.algR,
                             add_terms(self.field, self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return TensorElement(self.algL, self.algR,
                             add_terms(self.field, self.terms, other.terms, -1))

    def __neg__(self):
        f = self.field
        return TensorElement(self.algL, self.algR,
                             {k: f.neg(v) for k, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        return TensorElement(self.algL, self.algR,
                             mul_tensor(self.algL, self.algR, self.terms, other.terms))

    def scaled(self, c):
        f = self.field
        if isinstance(c, Scalar):
            out = {}
            for par, cyc in c.terms.items():
                for k, v in self.terms.items():
                    key = k[:16] + addp(k[16:], par)
                    _merge(out, key, f.mul(v, cyc), f)
            return TensorElement(self.algL, self.algR, out)
        return TensorElement(self.algL, self.algR, scale_terms(f, self.terms, c))

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.algL is other.algL
                and self.algR is other.algR and self.terms == other.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][16:], kv[0][8:16], kv[0][:8]))

    def __repr__(self):
        bits = []
        for k, c in self.sorted_terms()[:8]:
            lm = monomial_str(k[:8] + PAR_ZERO, self.algL.letter_symbol)
            rm = monomial_str(k[8:16] + PAR_ZERO, self.algR.letter_symbol)
            co = Scalar(self.field, {k[16:]: c}).emit()
            bits.append(f"({co})*[{lm} (x) {rm}]")
        more = "" if len(self.terms) <= 8 else f" ... ({len(self.terms)} terms)"
        return " + ".join(bits) + more if bits else "0"


def mul_tensor(algL, algR, A, B):
    """(a (x) b)(c (x) d) = ac (x) bd, componentwise in the bosonizations."""
    f = algL.field
    out = {}
    for k1, c1 in A.items():
        le1, lg1, re1, rg1, p1 = k1[:6], k1[6:8], k1[8:14], k1[14:16], k1[16:]
        for k2, c2 in B.items():
            le2, lg2, re2, rg2, p2 = k2[:6], k2[6:8], k2[8:14], k2[14:16], k2[16:]
            c = f.mul(c1, c2)
            ex = 0
            if lg1 != G_ZERO and any(le2):
                ex += algL.config.bichar_exp(lg1, deg(le2))
            if rg1 != G_ZERO and any(re2):
                ex += algR.config.bichar_exp(rg1, deg(re2))
            if ex:
                c = f.mul(c, f.qpow(ex))
            lg = addg(lg1, lg2)
            rg = addg(rg1, rg2)
            p = addp(p1, p2)
            LP = prod(algL, le1, le2)
            RP = prod(algR, re1, re2)
            for kl, cl in LP.items():
                ccl = f.mul(c, cl)
                lkey = kl[:6] + addg(kl[6:8], lg)
                lpar = kl[8:]
                for kr, cr in RP.items():
                    key = (lkey + kr[:6] + addg(kr[6:8], rg)
                           + addp(addp(p, lpar), kr[8:]))
                    _merge(out, key, f.mul(ccl, cr), f)
    return out


# ---------------------------------------------------------------------------
# element constructors and maps


def qbracket(u, v):
    """[u, v]_c = uv - bichar(deg u, deg v) vu for formally homogeneous u, v."""
    du = u.formal_degree()
    dv = v.formal_degree()
    if du is None or dv is None:
        raise InhomogeneousBracket("q-bracket needs alpha-homogeneous arguments")
    s = u.alg.field.qpow(u.alg.config.bichar_exp(du, dv))
    return u * v - (v * u).scaled(s)


def tensor_qbracket(u, v, du, dv):
    """Tensor-square image of a bracket: scalar taken from the source degrees."""
    s = u.field.qpow(u.algL.config.bichar_exp(du, dv))
    return u * v - (v * u).scaled(s)


class ComoduleMap:
    """An algebra map src -> algL (x) algR fixed by images of x1, x2 and
    g -> g (x) g; letters' images are built through the defining brackets."""

    def __init__(self, src, algL, algR, img1, img2):
        self.src = src
        self.algL = algL
        self.algR = algR
        imgs = {RANK["1"]: img1, RANK["2"]: img2}
        for name in ("12", "112", "1112", "beta"):
            a, b = rootdata.BRACKET_DEF[name]
            imgs[RANK[name]] = tensor_qbracket(
                imgs[RANK[a]], imgs[RANK[b]],
                ROOT_DEGREES[RANK[a]], ROOT_DEGREES[RANK[b]])
        self.letter_images = imgs
        self._powers = {r: [self.unit(), imgs[r]] for r in imgs}
        self._mono_cache = {}

    def unit(self):
        key = E_ZERO + G_ZERO + E_ZERO + G_ZERO + PAR_ZERO
        return TensorElement(self.algL, self.algR, {key: self.algL.field.one})

    def letter_power(self, r, k):
        pows = self._powers[r]
        while len(pows) <= k:
            pows.append(pows[-1] * pows[1])
        return pows[k]

    def apply(self, elem):
        """Apply the map to an AlgebraElement of the source algebra."""
        f = self.algL.field
        out = {}
        for key, c in elem.terms.items():
            img = self._mono_image(key[:6], key[6:8])
            par = key[8:]
            for k, v in img.terms.items():
                kk = k[:16] + addp(k[16:], par)
                _merge(out, kk, f.mul(c, v), f)
        return TensorElement(self.algL, self.algR, out)

    def _mono_image(self, exps, grp):
        ck = (exps, grp)
        hit = self._mono_cache.get(ck)
        if hit is not None:
            return hit
        out = None
        for r in range(NROOTS - 1, -1, -1):
            if exps[r]:
                p = self.letter_power(r, exps[r])
                out = p if out is None else out * p
        if grp != G_ZERO:
            gterm = TensorElement(
                self.algL, self.algR,
                {E_ZERO + grp + E_ZERO + grp + PAR_ZERO: self.algL.field.one})
            out = gterm if out is None else out * gterm
        if out is None:
            out = self.unit()
        self._mono_cache[ck] = out
        return out


def expand_leg(cmap, tensor, side):
    """Apply a comodule map to one leg of a tensor, producing triple-tensor
    term dicts keyed by 32-tuples (6+2 letters/group per leg, params last).

    side='left' computes (map (x) id); side='right' computes (id (x) map).
    Used by the coassociativity / comodule-axiom checks."""
    f = tensor.field
    fmul = f.mul
    fadd = f.add
    zero = f.zero
    out = {}
    get = out.get
    left = side == "left"
    for k, c in tensor.terms.items():
        par = k[16:]
        img = cmap._mono_image(k[:6], k[6:8]) if left \
            else cmap._mono_image(k[8:14], k[14:16])
        rest = k[8:16] if left else k[:8]
        if par == PAR_ZERO:
            items = img.terms.items()
        else:
            items = ((kk[:16] + addp(kk[16:], par), vv)
                     for kk, vv in img.terms.items())
        for kk, vv in items:
            key = (kk[:16] + rest + kk[16:]) if left else (rest + kk)
            prev = get(key)
            w = fmul(c, vv)
            if prev is None:
                out[key] = w
            else:
                s = fadd(prev, w)
                if s == zero:
                    del out[key]
                else:
                    out[key] = s
    return out


def counit_left(t):
    """(eps (x) id) applied to a tensor element: keeps right legs of terms
    whose left leg has no letters (eps kills letters, eps(g) = 1)."""
    f = t.field
    out = {}
    for k, c in t.terms.items():
        if any(k[:6]):
            continue
        key = k[8:16] + k[16:]
        _merge(out, key, c, f)
    return AlgebraElement(t.algR, out)


def counit_right(t):
    f = t.field
    out = {}
    for k, c in t.terms.items():
        if any(k[8:14]):
            continue
        key = k[:8] + k[16:]
        _merge(out, key, c, f)
    return AlgebraElement(t.algL, out)
