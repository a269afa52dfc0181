"""The monster Lie algebra in exact rational arithmetic.

Generators: h1, h2 (Cartan), e(-1), f(-1) (real simple root vectors),
and imaginary simple root vectors e(0,j,k), f(0,j,k) for j >= 1,
1 <= k <= c(j), where c(j) is the j-th coefficient of the normalized
modular function computed in qseries.  Divided string vectors

    e(l,j,k) = (ad e(-1))^l e(0,j,k) / l!     (0 <= l < j)

and their f-mirrors form the letter alphabets of two free Lie algebras
u+ and u-; the whole algebra decomposes as

    m = u-  +  gl2-span{e(-1), f(-1), h1, h2}  +  u+.

Elements are stored as a flat dict from basis keys to Fraction:

    "h1", "h2", "e-1", "f-1"         scalars of the gl2 block
    ("u+", word), ("u-", word)       Lyndon basis words over letters

A letter is the tuple (j, k, l); tuple order therefore equals the
canonical alphabet order used by the Lyndon machinery.  The root of
e(l,j,k) is (l+1, j-l), of e(-1) is (1,-1); deg(a,b) = 2a + b, so every
letter has degree j + l + 2 >= 3 and e(-1) has degree 1.

Bracket strategy: bilinear dispatch over sector pairs.  Cartan acts by
weights; the gl2 block has a closed table; ad e(-1) and ad f(-1) act on
basis words as derivations through the string maps (raising/lowering
with integer coefficients); same-sign word pairs use the free-Lie
straightening; mixed-sign pairs go through cross_bracket, a memoized
Jacobi recursion that peels divided powers via l*e(l,..) = [e(-1),
e(l-1,..)] until the defining relation [e(0,j,k), f(0,p,q)] =
-delta*delta*(j*h1 + h2) applies.  The recursion strictly decreases the
metric (letters on the positive side) + (letters on the negative side),
with ties broken by total string level; the budget guard below only
trips on implementation bugs.

Truncation model: an element is either exact (exact_to is None) or
complete at all degrees <= exact_to, with unknown content possible only
at higher positive degrees.  The negative-degree side is always stored
completely.  Brackets propagate the bound soundly: content missing
above B in one factor can pollute the product only at degrees above
B + mindeg(other factor).
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from . import freelie
from .indices import (Letter, SupportConfig, display, letter_degree,
                      letter_root, make_letter)

H1 = "h1"
H2 = "h2"
EMINUS = "e-1"
FMINUS = "f-1"
WPOS = "u+"
WNEG = "u-"


class SupportError(ValueError):
    """A letter falls outside the active SupportConfig."""


# ---------------------------------------------------------------------------
# basis keys

def key_root(key) -> tuple:
    if key == H1 or key == H2:
        return (0, 0)
    if key == EMINUS:
        return (1, -1)
    if key == FMINUS:
        return (-1, 1)
    tag, word = key
    a = b = 0
    for L in word:
        r = letter_root(L)
        a += r[0]
        b += r[1]
    return (a, b) if tag == WPOS else (-a, -b)


def key_degree(key) -> int:
    a, b = key_root(key)
    return 2 * a + b


def key_sort(key) -> tuple:
    """Deterministic total order: Cartan, real, u+ by degree, u- by degree."""
    if key == H1:
        return (0, 0, ())
    if key == H2:
        return (0, 1, ())
    if key == EMINUS:
        return (1, 0, ())
    if key == FMINUS:
        return (1, 1, ())
    tag, word = key
    if tag == WPOS:
        return (2, key_degree(key), word)
    return (3, -key_degree(key), word)


def _check_word(word) -> None:
    if not word or not freelie.is_lyndon(word):
        raise ValueError(f"not a Lyndon word over the letter alphabet: {word!r}")
    for L in word:
        make_letter(L[2], L[0], L[1])  # validates ranges


# ---------------------------------------------------------------------------
# elements

def _min_none(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class MonsterElt:
    """Element of the algebra (or of its completion, truncated)."""

    __slots__ = ("terms", "exact_to")

    def __init__(self, terms=None, exact_to=None):
        t = {}
        if terms:
            for k, c in terms.items():
                f = c if isinstance(c, Fraction) else Fraction(c)
                if f:
                    t[k] = f
        if exact_to is not None and exact_to < 0:
            raise ValueError("exactness bound must be nonnegative")
        self.terms = t
        self.exact_to = exact_to

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def h1(cls, c=1):
        return cls({H1: c})

    @classmethod
    def h2(cls, c=1):
        return cls({H2: c})

    @classmethod
    def cartan(cls, a, b):
        return cls({H1: a, H2: b})

    @classmethod
    def e_minus(cls, c=1):
        return cls({EMINUS: c})

    @classmethod
    def f_minus(cls, c=1):
        return cls({FMINUS: c})

    @classmethod
    def e_letter(cls, l, j, k, c=1):
        return cls({(WPOS, (make_letter(l, j, k),)): c})

    @classmethod
    def f_letter(cls, l, j, k, c=1):
        return cls({(WNEG, (make_letter(l, j, k),)): c})

    @classmethod
    def e_word(cls, word, c=1):
        _check_word(word)
        return cls({(WPOS, tuple(word)): c})

    @classmethod
    def f_word(cls, word, c=1):
        _check_word(word)
        return cls({(WNEG, tuple(word)): c})

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def truncated(self) -> bool:
        return self.exact_to is not None

    def degrees(self):
        return sorted({key_degree(k) for k in self.terms})

    def min_degree(self):
        return min((key_degree(k) for k in self.terms), default=None)

    def max_degree(self):
        return max((key_degree(k) for k in self.terms), default=None)

    def component(self, d: int) -> "MonsterElt":
        """Homogeneous degree-d part; inherits the exactness bound."""
        return MonsterElt({k: c for k, c in self.terms.items() if key_degree(k) == d},
                          exact_to=self.exact_to)

    def window(self, bound: int) -> "MonsterElt":
        """Display restriction to |degree| <= bound (drops both tails)."""
        return MonsterElt(
            {k: c for k, c in self.terms.items() if abs(key_degree(k)) <= bound},
            exact_to=_min_none(self.exact_to, bound))

    def truncated_above(self, bound: int) -> "MonsterElt":
        """Model-sound truncation: positive terms above bound dropped."""
        return MonsterElt(
            {k: c for k, c in self.terms.items() if key_degree(k) <= bound},
            exact_to=_min_none(self.exact_to, bound))

    def validate_support(self, cfg: SupportConfig) -> None:
        for k in self.terms:
            if isinstance(k, tuple):
                for L in k[1]:
                    if not cfg.supports_letter(L):
                        raise SupportError(
                            f"letter {display(L)} outside support "
                            f"(bound {cfg.degree_bound}, caps {cfg.caps})")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            n = t.get(k, 0) + c
            if n:
                t[k] = n
            else:
                t.pop(k, None)
        return MonsterElt(t, exact_to=_min_none(self.exact_to, other.exact_to))

    def __neg__(self):
        return MonsterElt({k: -c for k, c in self.terms.items()}, exact_to=self.exact_to)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = c if isinstance(c, Fraction) else Fraction(c)
        if not c:
            return MonsterElt({}, exact_to=self.exact_to)
        return MonsterElt({k: c * v for k, v in self.terms.items()}, exact_to=self.exact_to)

    def __rmul__(self, c):
        return self.scaled(c)

    def __eq__(self, other):
        if not isinstance(other, MonsterElt):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        flag = "" if self.exact_to is None else f" (exact to {self.exact_to})"
        return f"<MonsterElt {format_elt(self)}{flag}>"


# ---------------------------------------------------------------------------
# printing (canonical form; the cli parser round-trips this)

def _atom_str(tag, word) -> str:
    letter_name = "e" if tag == WPOS else "f"
    if len(word) == 1:
        j, k, l = word[0]
        return f"{letter_name}({l},{j},{k})"
    u, v = freelie.std_factorize(word)
    return f"[{_atom_str(tag, u)},{_atom_str(tag, v)}]"


def format_term(key) -> str:
    if key in (H1, H2, EMINUS, FMINUS):
        if key == EMINUS:
            return "e(-1)"
        if key == FMINUS:
            return "f(-1)"
        return key
    return _atom_str(key[0], key[1])


def format_elt(x: MonsterElt) -> str:
    if not x.terms:
        return "0"
    parts = []
    for k in sorted(x.terms, key=key_sort):
        c = x.terms[k]
        mag = f"{abs(c)}*{format_term(k)}"
        if not parts:
            parts.append(("-" if c < 0 else "") + mag)
        else:
            parts.append((" - " if c < 0 else " + ") + mag)
    return "".join(parts)


# ---------------------------------------------------------------------------
# string action of the real root vectors on letters

def _string_up(L: Letter):
    """ad of the raising real vector on a letter: l -> l+1, coefficient l+1."""
    j, k, l = L
    if l + 1 >= j:
        return None
    return (l + 1, (j, k, l + 1))


def _string_down(L: Letter):
    """ad of the lowering real vector on a letter: l -> l-1, coefficient j-l."""
    j, k, l = L
    if l == 0:
        return None
    return (j - l, (j, k, l - 1))


_AD_WORD_CACHE: dict = {}


def _ad_string_word(word, up: bool) -> dict:
    """Derivation extension of the string maps to a basis word (integer coeffs)."""
    key = (word, up)
    hit = _AD_WORD_CACHE.get(key)
    if hit is not None:
        return hit
    if len(word) == 1:
        r = _string_up(word[0]) if up else _string_down(word[0])
        res = {} if r is None else {(r[1],): r[0]}
    else:
        u, v = freelie.std_factorize(word)
        res = {}
        for w, c in _ad_string_word(u, up).items():
            for w2, c2 in freelie.bracket_words(w, v).items():
                n = res.get(w2, 0) + c * c2
                if n:
                    res[w2] = n
                else:
                    res.pop(w2, None)
        for w, c in _ad_string_word(v, up).items():
            for w2, c2 in freelie.bracket_words(u, w).items():
                n = res.get(w2, 0) + c * c2
                if n:
                    res[w2] = n
                else:
                    res.pop(w2, None)
    _AD_WORD_CACHE[key] = res
    return res


# ---------------------------------------------------------------------------
# term dictionaries (plain dict key -> Fraction, exact, no truncation)

def dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        n = out.get(k, 0) + c
        if n:
            out[k] = n
        else:
            out.pop(k, None)
    return out


def dict_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def dict_bracket(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            c = c1 * c2
            if not c:
                continue
            for k, v in term_bracket(k1, k2).items():
                n = out.get(k, 0) + c * v
                if n:
                    out[k] = n
                else:
                    out.pop(k, None)
    return out


def _sector(key) -> str:
    if key == H1 or key == H2:
        return "h"
    if key == EMINUS:
        return "em"
    if key == FMINUS:
        return "fm"
    return "up" if key[0] == WPOS else "un"


def term_bracket(k1, k2) -> dict:
    """Exact bracket of two basis keys, as a term dict."""
    s1 = _sector(k1)
    s2 = _sector(k2)
    if s1 == "h":
        if s2 == "h":
            return {}
        r = key_root(k2)
        c = r[0] if k1 == H1 else r[1]
        return {k2: Fraction(c)} if c else {}
    if s2 == "h":
        r = key_root(k1)
        c = r[0] if k2 == H1 else r[1]
        return {k1: Fraction(-c)} if c else {}
    if s1 == "em":
        if s2 == "em":
            return {}
        if s2 == "fm":
            return {H1: Fraction(1), H2: Fraction(-1)}
        tag, word = k2
        table = _ad_string_word(word, up=(tag == WPOS))
        return {(tag, w): Fraction(c) for w, c in table.items()}
    if s1 == "fm":
        if s2 == "em":
            return {H1: Fraction(-1), H2: Fraction(1)}
        if s2 == "fm":
            return {}
        tag, word = k2
        table = _ad_string_word(word, up=(tag == WNEG))
        return {(tag, w): Fraction(c) for w, c in table.items()}
    if s2 in ("em", "fm"):
        return dict_scale(term_bracket(k2, k1), Fraction(-1))
    # both are words now
    tag1, w1 = k1
    tag2, w2 = k2
    if tag1 == tag2:
        return {(tag1, w): Fraction(c)
                for w, c in freelie.bracket_words(w1, w2).items()}
    if tag1 == WPOS:
        return cross_bracket_words(w1, w2)
    return dict_scale(cross_bracket_words(w2, w1), Fraction(-1))


# ---------------------------------------------------------------------------
# mixed-sign sector

_CROSS_CACHE: dict = {}
_CROSS_BUDGET = 500_000
_budget_left = None


def clear_caches() -> None:
    _CROSS_CACHE.clear()
    _AD_WORD_CACHE.clear()
    freelie.clear_caches()


def cross_bracket_words(wp, wn) -> dict:
    """[positive basis word, negative basis word] by Jacobi recursion."""
    global _budget_left
    top = _budget_left is None
    if top:
        _budget_left = _CROSS_BUDGET
    try:
        return _cross(wp, wn)
    finally:
        if top:
            _budget_left = None


def _cross(wp, wn) -> dict:
    global _budget_left
    key = (wp, wn)
    hit = _CROSS_CACHE.get(key)
    if hit is not None:
        return hit
    _budget_left -= 1
    if _budget_left < 0:
        raise RuntimeError("cross-bracket recursion budget exceeded; "
                           "the (letter count, string level) metric should "
                           "make this unreachable")
    if len(wp) == 1 and len(wn) == 1:
        res = _cross_letters(wp[0], wn[0])
    elif len(wp) > 1:
        u, v = freelie.std_factorize(wp)
        # [[b_u, b_v], Y] = [b_u, [b_v, Y]] - [b_v, [b_u, Y]]
        t1 = dict_bracket({(WPOS, u): Fraction(1)}, _cross(v, wn))
        t2 = dict_bracket({(WPOS, v): Fraction(1)}, _cross(u, wn))
        res = dict_add(t1, dict_scale(t2, Fraction(-1)))
    else:
        u, v = freelie.std_factorize(wn)
        # [X, [Fu, Fv]] = [[X, Fu], Fv] + [Fu, [X, Fv]]
        t1 = dict_bracket(_cross(wp, u), {(WNEG, v): Fraction(1)})
        t2 = dict_bracket({(WNEG, u): Fraction(1)}, _cross(wp, v))
        res = dict_add(t1, t2)
    _CROSS_CACHE[key] = res
    return res


def _cross_letters(Lp: Letter, Ln: Letter) -> dict:
    jp, kp, lp = Lp
    jn, kn, ln = Ln
    if (jp, kp) != (jn, kn):
        return {}
    j = jp
    if lp == 0 and ln == 0:
        return {H1: Fraction(-j), H2: Fraction(-1)}
    if lp > 0:
        # l*e(l) = [e(-1), e(l-1)], then Jacobi against f(m)
        below = (j, kp, lp - 1)
        inner = _cross((below,), (Ln,))
        out = dict_bracket({EMINUS: Fraction(1)}, inner)
        if ln > 0:
            # [e(-1), f(m)] = (j-m) f(m-1)
            out = dict_add(out, dict_scale(_cross((below,), ((j, kn, ln - 1),)),
                                           Fraction(-(j - ln))))
        return dict_scale(out, Fraction(1, lp))
    # lp == 0, ln > 0: m*f(m) = [f(-1), f(m-1)] and [e(0), f(-1)] = 0
    inner = _cross((Lp,), ((j, kn, ln - 1),))
    return dict_scale(dict_bracket({FMINUS: Fraction(1)}, inner), Fraction(1, ln))


# ---------------------------------------------------------------------------
# public bracket with truncation propagation

def _effective_min_degree(x: MonsterElt):
    m = x.min_degree()
    if x.exact_to is not None:
        m = x.exact_to + 1 if m is None else min(m, x.exact_to + 1)
    return m  # None means certainly zero


def _result_bound(a: MonsterElt, b: MonsterElt):
    bound = inf
    if a.exact_to is not None:
        mb = _effective_min_degree(b)
        if mb is not None:
            bound = min(bound, a.exact_to + mb)
    if b.exact_to is not None:
        ma = _effective_min_degree(a)
        if ma is not None:
            bound = min(bound, b.exact_to + ma)
    return bound


def bracket(a: MonsterElt, b: MonsterElt, cfg: SupportConfig | None = None) -> MonsterElt:
    """Lie bracket.  With cfg: validates support and clamps above the bound."""
    if cfg is not None:
        a.validate_support(cfg)
        b.validate_support(cfg)
    raw: dict = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            c = c1 * c2
            if not c:
                continue
            for k, v in term_bracket(k1, k2).items():
                n = raw.get(k, 0) + c * v
                if n:
                    raw[k] = n
                else:
                    raw.pop(k, None)
    bound = _result_bound(a, b)
    if cfg is not None and any(key_degree(k) > cfg.degree_bound for k in raw):
        bound = min(bound, cfg.degree_bound)
    if bound is not inf:
        raw = {k: c for k, c in raw.items() if key_degree(k) <= bound}
        return MonsterElt(raw, exact_to=int(bound))
    return MonsterElt(raw)


def omega(a: MonsterElt) -> MonsterElt:
    """Mirror involution: e <-> f on letters and words, h -> -h.

    Defined on exact elements only: mirroring a positively-truncated
    element would leave unknown content on the negative side, which the
    storage model keeps complete.
    """
    if a.exact_to is not None:
        raise ValueError("omega requires an exact element")
    out: dict = {}
    for k, c in a.terms.items():
        if k == H1 or k == H2:
            out[k] = -c
        elif k == EMINUS:
            out[FMINUS] = c
        elif k == FMINUS:
            out[EMINUS] = c
        else:
            tag, w = k
            out[(WNEG if tag == WPOS else WPOS, w)] = c
    return MonsterElt(out)


def ad_real(which: str, sector: str, l: int, j: int, k: int) -> MonsterElt:
    """[which, letter] for which in {"e-1","f-1"} on an e- or f-letter."""
    if which not in (EMINUS, FMINUS):
        raise ValueError("which must be 'e-1' or 'f-1'")
    if sector not in ("e", "f"):
        raise ValueError("sector must be 'e' or 'f'")
    L = make_letter(l, j, k)
    up = (which == EMINUS) == (sector == "e")
    r = _string_up(L) if up else _string_down(L)
    if r is None:
        return MonsterElt.zero()
    tag = WPOS if sector == "e" else WNEG
    return MonsterElt({(tag, (r[1],)): Fraction(r[0])})


def h_pair(l: int, j: int, k: int, cfg: SupportConfig | None = None) -> MonsterElt:
    """[e(l,j,k), f(l,j,k)], a Cartan element."""
    return bracket(MonsterElt.e_letter(l, j, k), MonsterElt.f_letter(l, j, k), cfg)


# ---------------------------------------------------------------------------
# defining-relation sweep

def _rel(report, rid, text, failures, instances):
    report["relations"].append({
        "id": rid,
        "relation": text,
        "instances": instances,
        "pass": not failures,
        "witnesses": failures[:10],
    })


def verify_defining_relations(cfg: SupportConfig, bracket_fn=None) -> dict:
    """Evaluate every defining relation on all indices supported by cfg.

    bracket_fn is injectable so a corrupted engine can serve as a
    negative control in tests; it defaults to the real bracket.
    """
    br = bracket_fn if bracket_fn is not None else (lambda x, y: bracket(x, y))
    base = [(j, k) for j in cfg.base_levels() for k in range(1, cfg.cap(j) + 1)]
    report: dict = {"config": {"degree_bound": cfg.degree_bound, "caps": dict(cfg.caps)},
                    "relations": []}
    h1 = MonsterElt.h1()
    h2 = MonsterElt.h2()
    em = MonsterElt.e_minus()
    fm = MonsterElt.f_minus()

    def check(rid, text, cases):
        fails = []
        n = 0
        for label, got, want in cases:
            n += 1
            if got != want:
                fails.append(f"{label}: got {format_elt(got)}, want {format_elt(want)}")
        _rel(report, rid, text, fails, n)

    check("D1", "[h1,h2] = 0", [("h1,h2", br(h1, h2), MonsterElt.zero())])
    check("D2", "[h1,e(-1)] = e(-1)", [("", br(h1, em), em)])
    check("D3", "[h2,e(-1)] = -e(-1)", [("", br(h2, em), -em)])
    check("D4", "[h1,e(0,j,k)] = e(0,j,k)",
          [(f"j={j},k={k}", br(h1, MonsterElt.e_letter(0, j, k)), MonsterElt.e_letter(0, j, k))
           for j, k in base])
    check("D5", "[h2,e(0,j,k)] = j*e(0,j,k)",
          [(f"j={j},k={k}", br(h2, MonsterElt.e_letter(0, j, k)), MonsterElt.e_letter(0, j, k, c=j))
           for j, k in base])
    check("D6", "[h1,f(-1)] = -f(-1)", [("", br(h1, fm), -fm)])
    check("D7", "[h2,f(-1)] = f(-1)", [("", br(h2, fm), fm)])
    check("D8", "[h1,f(0,j,k)] = -f(0,j,k)",
          [(f"j={j},k={k}", br(h1, MonsterElt.f_letter(0, j, k)), -MonsterElt.f_letter(0, j, k))
           for j, k in base])
    check("D9", "[h2,f(0,j,k)] = -j*f(0,j,k)",
          [(f"j={j},k={k}", br(h2, MonsterElt.f_letter(0, j, k)), MonsterElt.f_letter(0, j, k, c=-j))
           for j, k in base])
    check("D10", "[e(-1),f(-1)] = h1 - h2", [("", br(em, fm), MonsterElt.cartan(1, -1))])
    check("D11", "[e(-1),f(0,j,k)] = 0",
          [(f"j={j},k={k}", br(em, MonsterElt.f_letter(0, j, k)), MonsterElt.zero())
           for j, k in base])
    check("D12", "[e(0,j,k),f(-1)] = 0",
          [(f"j={j},k={k}", br(MonsterElt.e_letter(0, j, k), fm), MonsterElt.zero())
           for j, k in base])
    d13 = []
    for j, k in base:
        for p, q in base:
            want = MonsterElt.cartan(-j, -1) if (j, k) == (p, q) else MonsterElt.zero()
            d13.append((f"(j,k)=({j},{k}),(p,q)=({p},{q})",
                        br(MonsterElt.e_letter(0, j, k), MonsterElt.f_letter(0, p, q)), want))
    check("D13", "[e(0,j,k),f(0,p,q)] = -d_jp*d_kq*(j*h1 + h2)", d13)
    d14 = []
    d15 = []
    for j, k in base:
        x = MonsterElt.e_letter(0, j, k)
        for _ in range(j):
            x = br(em, x)
        d14.append((f"j={j},k={k}", x, MonsterElt.zero()))
        y = MonsterElt.f_letter(0, j, k)
        for _ in range(j):
            y = br(fm, y)
        d15.append((f"j={j},k={k}", y, MonsterElt.zero()))
    check("D14", "(ad e(-1))^j e(0,j,k) = 0", d14)
    check("D15", "(ad f(-1))^j f(0,j,k) = 0", d15)

    report["all_pass"] = all(r["pass"] for r in report["relations"])
    return report
