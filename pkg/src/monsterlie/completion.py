"""Automorphisms of the completed algebra, truncated to a degree window.

A TruncAut represents an automorphism of the positive formal completion
restricted to degrees <= N.  Two storage forms:

  * word-backed: a tuple of atomic factors, each ("exp", x) for a
    pro-summable exponential, ("torus", s, t) for the semisimple scaling
    by s^a t^b on the root (a, b), or ("perm", j, moved) for an index
    permutation at level j.  Application walks the factors right to
    left.  Composition is concatenation, inversion reverses the tuple
    and inverts each atom, so inverses stay cheap and exact.
  * image-backed: a map from algebra generators to their images mod
    degree > N.  Used for Neumann-series inverses and mixed
    compositions; letters and words are rebuilt from generator images
    through the divided-power strings and standard-factorization
    brackets.

Soundness: every application tracks the exact_to bound of monster
elements.  Word-backed application retries with a widened internal
bound when lowering factors (f(-1) exponentials) eat into the requested
window, so a returned element is always complete through the requested
degree unless the input itself was the limit.

The filtration level of g is measured on generators: the largest i such
that g(y) - y sits in degrees >= k + i for every generator y of degree
k, as far as the window can see.  log recovers x with exp(ad x) = g
from the operator series log(id + (g - id)) applied to h1: the degree
component of x at the root (a, b) is -1/a times the corresponding
component of log(g)(h1), since [x, h1] = -sum a(root) x_root and a >= 1
on the whole positive side.

approximate_by_generators peels g level by level: at degree d it takes
the degree-d component of log of the residual, writes it in Lyndon
coordinates, and emits one-parameter letter symbols for letters and
group commutators for bracket words (the lowest term of the
Baker-Campbell-Hausdorff log of a commutator word is the Lie bracket).
The emitted word agrees with g modulo the (i+1)-st filtration subgroup.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf
from typing import NamedTuple

from . import freelie, monster
from .indices import SupportConfig, display, make_letter
from .monster import (EMINUS, FMINUS, H1, H2, WNEG, WPOS, MonsterElt,
                      key_degree, key_root, key_sort)


def _min_none(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def generator_keys(cfg: SupportConfig) -> list:
    """Basis keys of the algebra generators supported by cfg."""
    gens = [H1, H2, EMINUS, FMINUS]
    for j in cfg.base_levels():
        for k in range(1, cfg.cap(j) + 1):
            L = (j, k, 0)
            gens.append((WPOS, (L,)))
            gens.append((WNEG, (L,)))
    return gens


# ---------------------------------------------------------------------------
# descent accounting
#
# The only degree-lowering exponential atom is a multiple of f(-1): one
# application moves every term down by exactly one degree, and a basis
# word can descend only as far as its all-bottom string configuration.
# So a term hidden above some degree E can resurface no lower than the
# cheapest bottom configuration whose fully raised form still clears E.
# These two knapsacks over the supported base levels turn that into (a)
# how much extra headroom a window needs and (b) an honest exactness
# floor after a lowering exponential has acted on a clamped series.

_PAD_CACHE: dict = {}
_FLOOR_CACHE: dict = {}


def _word_levels(cfg: SupportConfig) -> tuple:
    return tuple(sorted(j for j in cfg.base_levels() if cfg.cap(j) >= 1))


def _descent_pad(N: int, cfg: SupportConfig) -> int:
    """Max total string descent of any supported word whose all-bottom
    degree fits inside the window: max sum(j-1) with sum(j+2) <= N."""
    levels = _word_levels(cfg)
    key = (levels, N)
    hit = _PAD_CACHE.get(key)
    if hit is None:
        best = [0] * (max(N, 0) + 1)
        for c in range(1, max(N, 0) + 1):
            b = best[c - 1]
            for j in levels:
                if j + 2 <= c:
                    b = max(b, best[c - (j + 2)] + (j - 1))
            best[c] = b
        hit = best[max(N, 0)]
        _PAD_CACHE[key] = hit
    return hit


def _descent_floor(E: int, cfg: SupportConfig) -> int:
    """Least degree reachable by any supported term of degree > E under
    repeated lowering by f(-1).  E+1 means nothing up there can move."""
    levels = _word_levels(cfg)
    key = (levels, E)
    hit = _FLOOR_CACHE.get(key)
    if hit is not None:
        return hit
    cands = []
    if levels:
        # positive words: min bottom degree sum(j+2) whose fully raised
        # top sum(2j+1) clears E
        target = E + 1
        if target <= 0:
            cands.append(min(j + 2 for j in levels))
        else:
            f = [0] + [None] * target
            for t in range(1, target + 1):
                best = None
                for j in levels:
                    prev = f[max(0, t - (2 * j + 1))]
                    if prev is not None and (best is None or prev + j + 2 < best):
                        best = prev + j + 2
                f[t] = best
            if f[target] is not None:
                cands.append(f[target])
    if E < 1:
        # the gl2 ladder: the degree 1 generator descends to f(-1)
        cands.append(-1)
    if E < -3 and levels:
        # negative words sit above E once E is deep; they descend to
        # minus their fully raised top, within the cost room -E-1
        room = -E - 1
        best = [0] * (room + 1)
        for c in range(1, room + 1):
            b = best[c - 1]
            for j in levels:
                if j + 2 <= c:
                    b = max(b, best[c - (j + 2)] + 2 * j + 1)
            best[c] = b
        if best[room] > 0:
            cands.append(-best[room])
    hit = min(cands) if cands else E + 1
    _FLOOR_CACHE[key] = hit
    return hit


# ---------------------------------------------------------------------------
# atomic applications

def _apply_exp(x: MonsterElt, y: MonsterElt, bound: int, cfg: SupportConfig) -> MonsterElt:
    """exp(ad x)(y) with terms above bound discarded (and recorded).

    When x lowers degrees, content hidden above the exactness bound
    (clamped here or inherited from y) can slide back down; the result
    is then marked exact only below the support-derived descent floor."""
    acc = y
    term = y
    n = 0
    clamped = False
    limit = 4 * (bound + 8) + 4 * abs(min(0, y.min_degree() or 0))
    while not term.is_zero():
        n += 1
        if n > limit:
            raise RuntimeError("exponential series did not terminate; "
                               "input violates the nilpotence/degree-growth precondition")
        term = monster.bracket(x, term).scaled(Fraction(1, n))
        kept = {k: c for k, c in term.terms.items() if key_degree(k) <= bound}
        if len(kept) != len(term.terms):
            clamped = True
            term = MonsterElt(kept, exact_to=_min_none(term.exact_to, bound))
        acc = acc + term
    tail = _min_none(y.exact_to, bound if clamped else None)
    if tail is not None and (x.min_degree() or 0) < 0:
        acc = MonsterElt(acc.terms, exact_to=_descent_floor(tail, cfg) - 1)
    return acc


def _apply_torus(s: Fraction, t: Fraction, y: MonsterElt) -> MonsterElt:
    out = {}
    for k, c in y.terms.items():
        a, b = key_root(k)
        out[k] = c * s ** a * t ** b
    return MonsterElt(out, exact_to=y.exact_to)


_PERM_WORD_CACHE: dict = {}


def _perm_letter(level: int, moved: dict, L):
    j, k, l = L
    if j != level:
        return L
    return (j, moved.get(k, k), l)


def _perm_word(level: int, moved_key: tuple, word) -> dict:
    """Image of a basis word under an index relabeling, as a word dict."""
    key = (level, moved_key, word)
    hit = _PERM_WORD_CACHE.get(key)
    if hit is not None:
        return hit
    moved = dict(moved_key)
    if len(word) == 1:
        res = {(_perm_letter(level, moved, word[0]),): 1}
    else:
        u, v = freelie.std_factorize(word)
        res = {}
        for wu, cu in _perm_word(level, moved_key, u).items():
            for wv, cv in _perm_word(level, moved_key, v).items():
                for w, c in freelie.bracket_words(wu, wv).items():
                    n = res.get(w, 0) + cu * cv * c
                    if n:
                        res[w] = n
                    else:
                        res.pop(w, None)
    _PERM_WORD_CACHE[key] = res
    return res


def _apply_perm(level: int, moved_key: tuple, y: MonsterElt) -> MonsterElt:
    out: dict = {}
    for k, c in y.terms.items():
        if isinstance(k, tuple):
            tag, w = k
            for w2, m in _perm_word(level, moved_key, w).items():
                kk = (tag, w2)
                n = out.get(kk, 0) + c * m
                if n:
                    out[kk] = n
                else:
                    out.pop(kk, None)
        else:
            out[k] = out.get(k, 0) + c
    return MonsterElt(out, exact_to=y.exact_to)


def _apply_atom(atom, y: MonsterElt, bound: int, cfg: SupportConfig) -> MonsterElt:
    tag = atom[0]
    if tag == "exp":
        return _apply_exp(atom[1], y, bound, cfg)
    if tag == "torus":
        return _apply_torus(atom[1], atom[2], y)
    if tag == "perm":
        return _apply_perm(atom[1], atom[2], y)
    raise ValueError(f"unknown atomic factor {tag!r}")


def _invert_atom(atom):
    tag = atom[0]
    if tag == "exp":
        return ("exp", -atom[1])
    if tag == "torus":
        return ("torus", 1 / atom[1], 1 / atom[2])
    if tag == "perm":
        inv = tuple(sorted((v, k) for k, v in atom[2]))
        return ("perm", atom[1], inv)
    raise ValueError(f"unknown atomic factor {tag!r}")


# ---------------------------------------------------------------------------

class TruncAut:
    """Automorphism of the completion, stored mod degree > N."""

    __slots__ = ("N", "cfg", "word", "_images", "_img_cache")

    def __init__(self, N: int, cfg: SupportConfig, word=None, images=None):
        if N < 1:
            raise ValueError("truncation must be >= 1")
        if word is None and images is None:
            raise ValueError("need a defining word or generator images")
        self.N = N
        self.cfg = cfg
        self.word = tuple(word) if word is not None else None
        self._images = dict(images) if images is not None else None
        self._img_cache: dict = {}

    # construction ---------------------------------------------------------
    @classmethod
    def identity(cls, N: int, cfg: SupportConfig):
        return cls(N, cfg, word=())

    @property
    def word_backed(self) -> bool:
        return self.word is not None

    # application ----------------------------------------------------------
    def apply(self, y: MonsterElt, need: int | None = None) -> MonsterElt:
        """Image of y, complete at least through degree `need` (default N)
        unless y's own exactness bound makes that impossible."""
        need = self.N if need is None else need
        if self.word is not None:
            return self._apply_word(y, need)
        return self._apply_images(y, need)

    def _apply_word(self, y: MonsterElt, need: int) -> MonsterElt:
        # lowering factors can pull clamped content back into the window,
        # so start with enough headroom that nothing in reach is lost
        lowers = any(a[0] == "exp" and (a[1].min_degree() or 0) < 0
                     for a in self.word)
        R = need + 2 + (_descent_pad(need, self.cfg) if lowers else 0)
        prev = None
        while True:
            out = y
            for atom in reversed(self.word):
                out = _apply_atom(atom, out, R, self.cfg)
            if out.exact_to is None or out.exact_to >= need:
                return out
            if prev is not None and out.exact_to <= prev:
                return out  # limited by the input's own exactness
            prev = out.exact_to
            R += (need - out.exact_to) + 2

    def _image_of_key(self, key) -> MonsterElt:
        hit = self._img_cache.get(key)
        if hit is not None:
            return hit
        imgs = self._images
        if key in imgs:
            res = imgs[key]
        elif not isinstance(key, tuple):
            raise ValueError(f"no stored image for generator {key!r}")
        else:
            tag, w = key
            if len(w) == 1:
                j, k, l = w[0]
                base = self._image_of_key((tag, ((j, k, 0),)))
                real = self._image_of_key(EMINUS if tag == WPOS else FMINUS)
                res = base
                for step in range(1, l + 1):
                    res = monster.bracket(real, res).scaled(Fraction(1, step))
            else:
                u, v = freelie.std_factorize(w)
                res = monster.bracket(self._image_of_key((tag, u)),
                                      self._image_of_key((tag, v)))
        res = res.truncated_above(self.N)
        self._img_cache[key] = res
        return res

    def _apply_images(self, y: MonsterElt, need: int) -> MonsterElt:
        out = MonsterElt.zero()
        for k, c in y.terms.items():
            out = out + self._image_of_key(k).scaled(c)
        if y.exact_to is not None:
            out = MonsterElt(out.terms, exact_to=_min_none(out.exact_to, y.exact_to))
        return out

    # stored generator images ---------------------------------------------
    def images(self) -> dict:
        if self._images is None:
            self._images = {g: self.apply(MonsterElt({g: 1})).truncated_above(self.N)
                            for g in generator_keys(self.cfg)}
        return self._images

    # comparison -----------------------------------------------------------
    def equal(self, other: "TruncAut") -> bool:
        _check_match(self, other)
        for g in generator_keys(self.cfg):
            y = MonsterElt({g: 1})
            a = self.apply(y).truncated_above(self.N)
            b = other.apply(y).truncated_above(self.N)
            if a != b:
                return False
        return True

    def report_dict(self) -> dict:
        """Deterministic JSON-ready dump of the generator images."""
        gens = []
        for g in generator_keys(self.cfg):
            img = self.apply(MonsterElt({g: 1})).truncated_above(self.N)
            terms = [[monster.format_term(k), str(img.terms[k])]
                     for k in sorted(img.terms, key=key_sort)]
            gens.append({"generator": monster.format_term(g), "image": terms})
        d = {"truncation": self.N,
             "caps": {str(j): self.cfg.cap(j) for j in sorted(self.cfg.caps)},
             "images": gens}
        if self.word is not None:
            d["word"] = [_atom_str(a) for a in self.word]
        return d

    def __repr__(self):
        kind = f"word[{len(self.word)}]" if self.word is not None else "images"
        return f"<TruncAut N={self.N} {kind}>"


def _atom_str(atom) -> str:
    if atom[0] == "exp":
        return f"exp({monster.format_elt(atom[1])})"
    if atom[0] == "torus":
        return f"torus({atom[1]},{atom[2]})"
    return f"perm(level={atom[1]}, {dict(atom[2])})"


def _check_match(g: TruncAut, h: TruncAut) -> None:
    if g.N != h.N or g.cfg != h.cfg:
        raise ValueError("window mismatch: automorphisms use different truncation or support")


# ---------------------------------------------------------------------------
# constructors

def exp_ad(x: MonsterElt, N: int, cfg: SupportConfig) -> TruncAut:
    """exp(ad x) as a truncated automorphism.

    Accepts x in the positive nilpotent sector (any mix of e(-1) and
    positive words: min degree >= 1, so the series is degree-finite) or
    a pure multiple of f(-1) (locally nilpotent).  Cartan input is
    semisimple, not unipotent: use torus().  Negative imaginary content
    is rejected: its exponential does not act on the positive
    completion.
    """
    keys = set(x.terms)
    pos_ok = all(k == EMINUS or (isinstance(k, tuple) and k[0] == WPOS) for k in keys)
    if pos_ok:
        return TruncAut(N, cfg, word=(("exp", x),))
    if keys <= {FMINUS}:
        return TruncAut(N, cfg, word=(("exp", x),))
    if keys <= {H1, H2}:
        raise ValueError("Cartan element acts semisimply; use torus(), not exp_ad()")
    raise ValueError("exp_ad needs a positive-sector element or a multiple of f(-1); "
                     "negative imaginary content has no action on the positive completion")


def torus(s, t, N: int, cfg: SupportConfig) -> TruncAut:
    s = Fraction(s)
    t = Fraction(t)
    if s == 0 or t == 0:
        raise ValueError("torus parameters must be nonzero")
    return TruncAut(N, cfg, word=(("torus", s, t),))


def compose(*auts: TruncAut) -> TruncAut:
    """Product g1 g2 ... gk as operators: the rightmost factor acts first."""
    if not auts:
        raise ValueError("compose needs at least one factor")
    first = auts[0]
    for g in auts[1:]:
        _check_match(first, g)
    if all(g.word is not None for g in auts):
        word = tuple(a for g in auts for a in g.word)
        return TruncAut(first.N, first.cfg, word=word)
    imgs = {}
    for gen in generator_keys(first.cfg):
        y = MonsterElt({gen: 1})
        for g in reversed(auts):
            y = g.apply(y)
        imgs[gen] = y.truncated_above(first.N)
    return TruncAut(first.N, first.cfg, images=imgs)


def invert(g: TruncAut) -> TruncAut:
    """Inverse automorphism: word reversal when the defining word is known,
    otherwise a unipotent Neumann series on (g - id)."""
    if g.word is not None:
        return TruncAut(g.N, g.cfg, word=tuple(_invert_atom(a) for a in reversed(g.word)))
    lvl = filtration_level(g)
    if lvl.level < 1:
        raise ValueError("cannot invert a non-unipotent automorphism without its defining word")
    imgs = {}
    for gen in generator_keys(g.cfg):
        y = MonsterElt({gen: 1})
        total = y
        term = y
        while True:
            term = (term - g.apply(term)).truncated_above(g.N)
            if term.is_zero():
                break
            total = total + term
        imgs[gen] = total.truncated_above(g.N)
    return TruncAut(g.N, g.cfg, images=imgs)


# ---------------------------------------------------------------------------
# structure probes

class FiltrationLevel(NamedTuple):
    level: int
    window_limited: bool


def filtration_level(g: TruncAut) -> FiltrationLevel:
    """Largest i visible in the window with g(y) - y in degrees >= deg(y) + i
    for every generator y.  Requires g to fix the Cartan mod higher degree."""
    cands = []
    for gen in generator_keys(g.cfg):
        y = MonsterElt({gen: 1})
        diff = (g.apply(y) - y).truncated_above(g.N)
        if gen in (H1, H2) and not diff.is_zero():
            if (diff.min_degree() or 0) <= 0:
                raise ValueError("not unipotent-type: Cartan is not fixed mod higher degree")
        if not diff.is_zero():
            cands.append(diff.min_degree() - key_degree(gen))
    if not cands:
        return FiltrationLevel(g.N, True)
    m = min(cands)
    if m > g.N:
        return FiltrationLevel(g.N, True)
    return FiltrationLevel(m, False)


def _gen_pad(cfg: SupportConfig) -> int:
    """Depth of the deepest negative-degree generator.

    Results destined for exp_ad (recovered or transported logs) are
    computed this far beyond the window so the rebuilt automorphism has
    complete images on the f-side generators through degree N.
    """
    return max((j + 2 for j in cfg.base_levels()), default=0)


def log_unipotent(g: TruncAut) -> MonsterElt:
    """x with exp_ad(x) = g mod the window, for unipotent g."""
    lvl = filtration_level(g)
    if lvl.level < 1:
        raise ValueError("log requires a unipotent automorphism (filtration level >= 1)")
    B = g.N + _gen_pad(g.cfg)
    h1 = MonsterElt({H1: 1})
    # D = log(g) as an operator, applied to h1
    term = (g.apply(h1, B) - h1).truncated_above(B)
    dh1 = MonsterElt.zero()
    k = 1
    while not term.is_zero():
        dh1 = dh1 + term.scaled(Fraction((-1) ** (k + 1), k))
        if k > B + 2:
            raise RuntimeError("log series did not terminate within the window")
        term = (g.apply(term, B) - term).truncated_above(B)
        k += 1
    out = {}
    for key, c in dh1.terms.items():
        a = key_root(key)[0]
        if a < 1:
            raise RuntimeError("log produced content outside the positive sector")
        out[key] = -c / a
    return MonsterElt(out, exact_to=dh1.exact_to if dh1.exact_to is not None else B)


def Ad(g: TruncAut, x: MonsterElt) -> MonsterElt:
    """Adjoint action on the positive sector: g applied to x."""
    for k in x.terms:
        if not (k == EMINUS or (isinstance(k, tuple) and k[0] == WPOS)):
            raise ValueError("Ad is defined on the positive sector only")
    return g.apply(x, g.N + _gen_pad(g.cfg))


def aut_check(g: TruncAut, pairs) -> dict:
    """Spot-check multiplicativity: g[a,b] = [g a, g b] mod the window."""
    failures = []
    n = 0
    for a, b in pairs:
        n += 1
        lhs = g.apply(monster.bracket(a, b))
        ga = g.apply(a)
        gb = g.apply(b)
        rhs = monster.bracket(ga, gb)
        cut = g.N
        for e in (lhs.exact_to, rhs.exact_to):
            if e is not None:
                cut = min(cut, e)
        if lhs.truncated_above(cut) != rhs.truncated_above(cut):
            failures.append({
                "a": monster.format_elt(a),
                "b": monster.format_elt(b),
                "lhs": monster.format_elt(lhs.truncated_above(cut)),
                "rhs": monster.format_elt(rhs.truncated_above(cut)),
                "compared_through_degree": cut,
            })
    return {"checked": n, "failures": failures, "pass": not failures}


# ---------------------------------------------------------------------------
# constructive density: peeling a unipotent automorphism into generator words

def realize_tokens(tokens, N: int, cfg: SupportConfig) -> TruncAut:
    """Word of one-parameter symbols ("X", -1 | (l,j,k), u) as a TruncAut;
    leftmost token is the leftmost factor."""
    word = []
    for kind, idx, u in tokens:
        if kind != "X":
            raise ValueError(f"unrealizable token kind {kind!r}")
        if idx == -1:
            x = MonsterElt.e_minus(u)
        else:
            l, j, k = idx
            x = MonsterElt.e_letter(l, j, k, c=u)
        word.append(("exp", x))
    return TruncAut(N, cfg, word=tuple(word))


def format_tokens(tokens) -> str:
    parts = []
    for kind, idx, u in tokens:
        if idx == -1:
            parts.append(f"{kind}(-1;{u})")
        else:
            l, j, k = idx
            parts.append(f"{kind}({l},{j},{k};{u})")
    return "".join(parts) if parts else "1"


def _inv_tokens(tokens):
    return [(kind, idx, -u) for kind, idx, u in reversed(tokens)]


def _emit_word(word, coeff) -> list:
    """Token word whose log has lowest term coeff * (basis word)."""
    if len(word) == 1:
        j, k, l = word[0]
        return [("X", (l, j, k), coeff)]
    u, v = freelie.std_factorize(word)
    A = _emit_word(u, Fraction(1))
    B = _emit_word(v, coeff)
    return A + B + _inv_tokens(A) + _inv_tokens(B)


def approximate_by_generators(g: TruncAut, i: int) -> list:
    """Word over {X(-1;u), X(l,j,k;u)} agreeing with g mod filtration i+1.

    Peels one degree at a time: the degree-d component of log of the
    residual is written in the Lyndon basis and realized by letter
    exponentials and group commutators, then divided out.
    """
    if i > g.N:
        raise ValueError("cannot certify beyond the truncation window")
    lvl = filtration_level(g)
    if lvl.level < 1:
        raise ValueError("approximation requires a unipotent automorphism")
    tokens: list = []
    residual = g
    for d in range(1, i + 1):
        x = log_unipotent(residual)
        xd = x.component(d)
        if xd.is_zero():
            continue
        step: list = []
        for key in sorted(xd.terms, key=key_sort):
            c = xd.terms[key]
            if key == EMINUS:
                step.append(("X", -1, c))
            elif isinstance(key, tuple) and key[0] == WPOS:
                step.extend(_emit_word(key[1], c))
            else:
                raise RuntimeError("log of a unipotent residual left the positive sector")
        tokens.extend(step)
        piece = realize_tokens(step, g.N, g.cfg)
        residual = compose(invert(piece), residual)
    return tokens


def equal_mod_level(g: TruncAut, h: TruncAut, i: int) -> bool:
    """True when g^-1 h lies in the i-th filtration subgroup as far as the
    window can certify."""
    lvl = filtration_level(compose(invert(g), h))
    return lvl.level >= i or (lvl.window_limited and lvl.level >= min(i, g.N))
