"""The presented group: symbols, relation catalog, and validators.

Symbols are one-parameter families X(-1;u), Y(-1;u), X(l,j,k;u),
Y(l,j,k;u), H1(s), H2(s) plus the derived Weyl-type abbreviations

    w(-1;s)    = X(-1;s) Y(-1;-1/s) X(-1;s)
    w(l,j,k;s) = X(l,j,k;s) Y(l,j,k;-1/(s*c)) X(l,j,k;s)

with the structure constant c = c_const(l,j).  Group words are freely
reduced sequences of (symbol, +-1); no consequence of the relations is
ever applied to words themselves.

The catalog assigns each relation family an id R1..R35 (display order:
the fifteen real-root families, seven mixed-generator families, the two
real-Weyl conjugation families, then the eleven imaginary-root
families) and a validation class:

  ADJOINT      every symbol acts on the completed algebra, so both
               sides are compared as TruncAut.
  MIRROR       the family contains imaginary Y symbols (no action on
               the positive completion); the e/f mirror transports it
               to an ADJOINT family, and conjugating by the mirror
               involution shows the two are equivalent.  Symbol map:
               X <-> Y at equal parameters, H_i(s) -> H_i(1/s),
               Weyl abbreviations expanded first.
  SL2          single-string families with Weyl symbols or fractional
               torus exponents: validated in 2x2 rational matrices,
               X(u) upper unitriangular, Y(v) lower unitriangular with
               entry c*v, H1(s) = diag(s^(l+1), 1), H2(s) =
               diag(1, s^-(j-l)) (real family: exponents 1, -1, c=1).
               Fractional powers are avoided by substituting parameters
               that make every exponent integral; reports record the
               restriction.
  UNVALIDATED  cross-string imaginary X/Y commutation (R16): no
               faithful model is available here, so only the Lie-level
               shadow [e(l,j,k), f(m,p,q)] = 0 is swept, and the report
               marks the family "supported, not validated".

Convention note: the real-Weyl conjugation of an imaginary X-string
(R23) is validated with the scalar (-1)^l on the right-hand side.  The
adjoint action of w(-1;1) computed from the defining series sends
e(l,j,k) to (-1)^l * e(j-1-l,j,k) and f(l,j,k) to (-1)^(j-1-l) *
f(j-1-l,j,k); a single sign law for both lines is inconsistent with the
series at even j, and the (-1)^l law is the one the engine reproduces
(it also matches the standard lowest-weight-string action of the Weyl
representative in every 2x2 check).  The Y-line (R24) keeps the scalar
(-1)^(j-1-l) and is validated through the mirror transport.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import NamedTuple

from . import completion, monster
from .completion import TruncAut, compose, exp_ad, invert, torus
from .indices import SupportConfig
from .monster import MonsterElt


class UnrealizableError(ValueError):
    """Symbol has no action on the positive completion."""


def c_const(l: int, j: int) -> Fraction:
    if not (0 <= l < j):
        raise ValueError("need 0 <= l < j")
    return Fraction((-1) ** (l + 1) * comb(j - 1, l) * (l + 1) * (j - l))


# ---------------------------------------------------------------------------
# symbols and words

class GenSymbol(NamedTuple):
    kind: str          # "X" | "Y" | "H1" | "H2" | "W"
    index: object      # -1, (l, j, k), or None for H kinds
    param: Fraction


def sym(kind: str, index, param) -> GenSymbol:
    p = Fraction(param)
    if kind in ("H1", "H2", "W") and p == 0:
        raise ValueError(f"{kind} parameter must be nonzero")
    if kind in ("H1", "H2"):
        index = None
    return GenSymbol(kind, index, p)


def format_symbol(s: GenSymbol) -> str:
    name = {"X": "X", "Y": "Y", "H1": "H1", "H2": "H2", "W": "w"}[s.kind]
    if s.kind in ("H1", "H2"):
        return f"{name}({s.param})"
    if s.index == -1:
        return f"{name}(-1;{s.param})"
    l, j, k = s.index
    return f"{name}({l},{j},{k};{s.param})"


class GroupWord:
    """Freely reduced word in the generator symbols."""

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        out = []
        for f in factors:
            s, e = f
            if e not in (1, -1):
                raise ValueError("exponents are +-1")
            if out and out[-1][0] == s and out[-1][1] == -e:
                out.pop()
            else:
                out.append((s, e))
        self.factors = tuple(out)

    @classmethod
    def of(cls, *symbols):
        return cls([(s, 1) for s in symbols])

    def __mul__(self, other):
        return GroupWord(self.factors + other.factors)

    def inverse(self):
        return GroupWord([(s, -e) for s, e in reversed(self.factors)])

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return f"<GroupWord {format_word(self)}>"


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    return a * b * a.inverse() * b.inverse()


def format_word(w: GroupWord) -> str:
    if not w.factors:
        return "1"
    return "".join(format_symbol(s) + ("^-1" if e == -1 else "")
                   for s, e in w.factors)


def expand_weyl(w: GroupWord) -> GroupWord:
    """Replace every Weyl abbreviation by its three-symbol definition."""
    out = []
    for s, e in w.factors:
        if s.kind != "W":
            out.append((s, e))
            continue
        c = Fraction(1) if s.index == -1 else c_const(s.index[0], s.index[1])
        trip = [(sym("X", s.index, s.param), 1),
                (sym("Y", s.index, Fraction(-1) / (s.param * c)), 1),
                (sym("X", s.index, s.param), 1)]
        if e == -1:
            trip = [(t, -x) for t, x in reversed(trip)]
        out.extend(trip)
    return GroupWord(out)


# ---------------------------------------------------------------------------
# adjoint realization

def realize_symbol(s: GenSymbol, N: int, cfg: SupportConfig) -> TruncAut:
    if s.kind == "X":
        if s.index == -1:
            return exp_ad(MonsterElt.e_minus(s.param), N, cfg)
        l, j, k = s.index
        return exp_ad(MonsterElt.e_letter(l, j, k, c=s.param), N, cfg)
    if s.kind == "Y":
        if s.index == -1:
            return exp_ad(MonsterElt.f_minus(s.param), N, cfg)
        raise UnrealizableError(
            f"{format_symbol(s)} has no action on the positive completion")
    if s.kind == "H1":
        return torus(s.param, 1, N, cfg)
    if s.kind == "H2":
        return torus(1, s.param, N, cfg)
    raise ValueError(f"cannot realize symbol kind {s.kind!r} directly")


def realize_word(w: GroupWord, N: int, cfg: SupportConfig) -> TruncAut:
    w = expand_weyl(w)
    if not w.factors:
        return TruncAut.identity(N, cfg)
    auts = []
    for s, e in w.factors:
        a = realize_symbol(s, N, cfg)
        auts.append(invert(a) if e == -1 else a)
    return compose(*auts)


# ---------------------------------------------------------------------------
# relation instances

class RelationInstance(NamedTuple):
    rid: str
    klass: str
    description: str
    lhs: GroupWord
    rhs: GroupWord
    index: object      # None, (l,j,k), or a pair of indices
    params: dict
    note: str


def mirror_symbol(s: GenSymbol) -> GenSymbol:
    if s.kind == "X":
        return GenSymbol("Y", s.index, s.param)
    if s.kind == "Y":
        return GenSymbol("X", s.index, s.param)
    if s.kind in ("H1", "H2"):
        return GenSymbol(s.kind, None, 1 / s.param)
    raise ValueError("expand Weyl abbreviations before mirroring")


def mirror_word(w: GroupWord) -> GroupWord:
    return GroupWord([(mirror_symbol(s), e) for s, e in expand_weyl(w).factors])


def mirror_relation(inst: RelationInstance) -> RelationInstance:
    """Transport a MIRROR-class instance to an equivalent ADJOINT one.

    Conjugation by the e/f involution turns the action of each mirrored
    symbol into the action of the original, so the mirrored relation
    holds on the completion iff the original holds on the negative
    completion, which is the content of the MIRROR classification.
    """
    if inst.klass != "MIRROR":
        raise ValueError(f"{inst.rid} is {inst.klass}, not MIRROR")
    return inst._replace(
        klass="ADJOINT",
        description="mirror transport of " + inst.description,
        lhs=mirror_word(inst.lhs),
        rhs=mirror_word(inst.rhs),
        note=(inst.note + "; " if inst.note else "") + "validated via e/f mirror transport",
    )


def validate_adjoint(inst: RelationInstance, N: int, cfg: SupportConfig) -> dict:
    if inst.klass != "ADJOINT":
        raise ValueError(f"validate_adjoint needs an ADJOINT instance, got {inst.klass}")
    lhs = realize_word(inst.lhs, N, cfg)
    rhs = realize_word(inst.rhs, N, cfg)
    ok = lhs.equal(rhs)
    return {"id": inst.rid, "description": inst.description,
            "params": {k: str(v) for k, v in sorted(inst.params.items())},
            "index": inst.index, "pass": ok, "note": inst.note}


# ---------------------------------------------------------------------------
# 2x2 matrix validation

def _mat_mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _mat_inv(A):
    det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    return ((A[1][1] / det, -A[0][1] / det), (-A[1][0] / det, A[0][0] / det))


_ID2 = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def _model_exponents(index):
    if index == -1:
        return 1, -1, Fraction(1)
    l, j, _k = index
    return l + 1, j - l, c_const(l, j)


def symbol_matrix(s: GenSymbol, index) -> tuple:
    """2x2 model at a fixed string; `index` fixes the exponents for H kinds."""
    aa, bb, cc = _model_exponents(index)
    z, o = Fraction(0), Fraction(1)
    if s.kind in ("X", "Y", "W") and s.index != index:
        raise ValueError("matrix model is single-string: cross-index symbol")
    if s.kind == "X":
        return ((o, s.param), (z, o))
    if s.kind == "Y":
        return ((o, z), (cc * s.param, o))
    if s.kind == "H1":
        return ((s.param ** aa, z), (z, o))
    if s.kind == "H2":
        return ((o, z), (z, s.param ** (-bb)))
    if s.kind == "W":
        return ((z, s.param), (-1 / s.param, z))
    raise ValueError(f"unknown symbol kind {s.kind!r}")


def eval_word_matrix(w: GroupWord, index) -> tuple:
    M = _ID2
    for s, e in w.factors:
        A = symbol_matrix(s, index)
        M = _mat_mul(M, _mat_inv(A) if e == -1 else A)
    return M


def validate_sl2(inst: RelationInstance, index) -> dict:
    if inst.klass not in ("SL2", "ADJOINT"):
        raise ValueError(f"validate_sl2 needs a single-string instance, got {inst.klass}")
    lhs = eval_word_matrix(inst.lhs, index)
    rhs = eval_word_matrix(inst.rhs, index)
    return {"id": inst.rid, "description": inst.description,
            "params": {k: str(v) for k, v in sorted(inst.params.items())},
            "index": index, "pass": lhs == rhs, "note": inst.note}


# ---------------------------------------------------------------------------
# the catalog

class RelationTemplate(NamedTuple):
    rid: str
    klass: str
    description: str
    param_names: tuple
    indexed: str       # "", "letter", "letter-l0", "letter-top", "pair"
    note: str


_CATALOG = [
    RelationTemplate("R1", "ADJOINT", "X(-1;u)X(-1;v) = X(-1;u+v)", ("u", "v"), "", ""),
    RelationTemplate("R2", "ADJOINT", "Y(-1;u)Y(-1;v) = Y(-1;u+v)", ("u", "v"), "", ""),
    RelationTemplate("R3", "ADJOINT", "H1(s)H1(t) = H1(st)", ("s", "t"), "", ""),
    RelationTemplate("R4", "ADJOINT", "H2(s)H2(t) = H2(st)", ("s", "t"), "", ""),
    RelationTemplate("R5", "ADJOINT", "H1(s)H2(t) = H2(t)H1(s)", ("s", "t"), "", ""),
    RelationTemplate("R6", "ADJOINT", "w(-1;1)X(-1;u)w(-1;1)^-1 = Y(-1;-u)", ("u",), "", ""),
    RelationTemplate("R7", "ADJOINT", "w(-1;1)Y(-1;u)w(-1;1)^-1 = X(-1;-u)", ("u",), "", ""),
    RelationTemplate("R8", "ADJOINT",
                     "Y(-1;-t)X(-1;s)Y(-1;t) = X(-1;-1/t)Y(-1;-t^2*s)X(-1;1/t)",
                     ("s", "t"), "", ""),
    RelationTemplate("R9", "ADJOINT", "w(-1;s)w(-1;1) = H1(-s)H2(-1/s)", ("s",), "", ""),
    RelationTemplate("R10", "ADJOINT", "w(-1;1)H1(s)w(-1;1)^-1 = H2(s)", ("s",), "", ""),
    RelationTemplate("R11", "ADJOINT", "w(-1;1)H2(s)w(-1;1)^-1 = H1(s)", ("s",), "", ""),
    RelationTemplate("R12", "ADJOINT", "H1(s)X(-1;u)H1(s)^-1 = X(-1;s*u)", ("s", "u"), "", ""),
    RelationTemplate("R13", "ADJOINT", "H2(s)X(-1;u)H2(s)^-1 = X(-1;u/s)", ("s", "u"), "", ""),
    RelationTemplate("R14", "ADJOINT", "H1(s)Y(-1;u)H1(s)^-1 = Y(-1;u/s)", ("s", "u"), "", ""),
    RelationTemplate("R15", "ADJOINT", "H2(s)Y(-1;u)H2(s)^-1 = Y(-1;s*u)", ("s", "u"), "", ""),
    RelationTemplate("R16", "UNVALIDATED",
                     "(X(l,j,k;u), Y(m,p,q;v)) = 1 for distinct strings or |l-m|>1",
                     ("u", "v"), "pair",
                     "no faithful model for cross-string imaginary X/Y; "
                     "checked at the Lie level only"),
    RelationTemplate("R17", "ADJOINT", "X(l,j,k;u+v) = X(l,j,k;u)X(l,j,k;v)",
                     ("u", "v"), "letter", ""),
    RelationTemplate("R18", "MIRROR", "Y(l,j,k;u+v) = Y(l,j,k;u)Y(l,j,k;v)",
                     ("u", "v"), "letter", ""),
    RelationTemplate("R19", "ADJOINT", "(X(-1;s), X(j-1,j,k;t)) = 1",
                     ("s", "t"), "letter-top", ""),
    RelationTemplate("R20", "ADJOINT", "(Y(-1;s), X(0,j,k;t)) = 1",
                     ("s", "t"), "letter-l0", ""),
    RelationTemplate("R21", "MIRROR", "(X(-1;s), Y(0,j,k;t)) = 1",
                     ("s", "t"), "letter-l0", ""),
    RelationTemplate("R22", "MIRROR", "(Y(-1;s), Y(j-1,j,k;t)) = 1",
                     ("s", "t"), "letter-top", ""),
    RelationTemplate("R23", "ADJOINT",
                     "w(-1;1)X(l,j,k;u)w(-1;1)^-1 = X(j-1-l,j,k;(-1)^l * u)",
                     ("u",), "letter",
                     "right-hand scalar (-1)^l taken from the defining adjoint series"),
    RelationTemplate("R24", "MIRROR",
                     "w(-1;1)Y(l,j,k;u)w(-1;1)^-1 = Y(j-1-l,j,k;(-1)^(j-1-l) * u)",
                     ("u",), "letter", ""),
    RelationTemplate("R25", "ADJOINT", "H1(s)X(l,j,k;u)H1(s)^-1 = X(l,j,k;s^(l+1)*u)",
                     ("s", "u"), "letter", ""),
    RelationTemplate("R26", "MIRROR", "H1(s)Y(l,j,k;u)H1(s)^-1 = Y(l,j,k;s^-(l+1)*u)",
                     ("s", "u"), "letter", ""),
    RelationTemplate("R27", "ADJOINT", "H2(s)X(l,j,k;u)H2(s)^-1 = X(l,j,k;s^(j-l)*u)",
                     ("s", "u"), "letter", ""),
    RelationTemplate("R28", "MIRROR", "H2(s)Y(l,j,k;u)H2(s)^-1 = Y(l,j,k;s^-(j-l)*u)",
                     ("s", "u"), "letter", ""),
    RelationTemplate("R29", "SL2",
                     "w(l,j,k;s)w(l,j,k;1) = H1((-s)^(1/(l+1)))H2((-s)^(1/(j-l)))",
                     ("sigma",), "letter",
                     "validated at s = -(-sigma)^((l+1)(j-l)) so both exponents are integral"),
    RelationTemplate("R30", "SL2",
                     "Y(l,j,k;-t)X(l,j,k;s)Y(l,j,k;t) = "
                     "X(l,j,k;-1/(t*c))Y(l,j,k;-c*t^2*s)X(l,j,k;1/(t*c))",
                     ("s", "t"), "letter", ""),
    RelationTemplate("R31", "SL2",
                     "w(l,j,k;1)H1(s)w(l,j,k;1)^-1 = H2(s^(-(l+1)/(j-l)))",
                     ("tau",), "letter",
                     "validated at s = tau^(j-l) so the exponent is integral"),
    RelationTemplate("R32", "SL2",
                     "w(l,j,k;1)H2(s)w(l,j,k;1)^-1 = H1(s^(-(j-l)/(l+1)))",
                     ("tau",), "letter",
                     "validated at s = tau^(l+1) so the exponent is integral"),
    RelationTemplate("R33", "SL2",
                     "w(l,j,k;1)X(l,j,k;u)w(l,j,k;1)^-1 = Y(l,j,k;-u/c)",
                     ("u",), "letter", ""),
    RelationTemplate("R34", "SL2",
                     "w(l,j,k;1)Y(l,j,k;u)w(l,j,k;1)^-1 = X(l,j,k;-c*u)",
                     ("u",), "letter", ""),
    RelationTemplate("R35", "SL2",
                     "Y(l,j,k;s) = X(l,j,k;1/(s*c))H1([-c*s]^(-1/(l+1)))"
                     "H2([-c*s]^(-1/(j-l)))w(l,j,k;1)X(l,j,k;1/(s*c))",
                     ("sigma",), "letter",
                     "validated at s = -sigma^((l+1)(j-l))/c so both exponents are integral"),
]


def relations_catalog() -> list:
    return list(_CATALOG)


def catalog_json() -> str:
    rows = [{"id": t.rid, "class": t.klass, "template": t.description,
             "params": list(t.param_names), "indexed": t.indexed, "note": t.note}
            for t in _CATALOG]
    return json.dumps(rows, indent=2, sort_keys=True)


# instance builders ---------------------------------------------------------

def _mk(rid, klass, desc, lhs, rhs, index, params, note=""):
    return RelationInstance(rid, klass, desc, lhs, rhs, index,
                            {k: Fraction(v) for k, v in params.items()}, note)


def build_instance(rid: str, params: dict, index=None) -> RelationInstance:
    """Concrete relation instance with all parameters substituted."""
    t = {x.rid: x for x in _CATALOG}[rid]
    p = {k: Fraction(v) for k, v in params.items()}
    W = GroupWord.of
    w_1 = sym("W", -1, 1)

    if rid == "R1" or rid == "R2":
        kind = "X" if rid == "R1" else "Y"
        u, v = p["u"], p["v"]
        return _mk(rid, t.klass, t.description,
                   W(sym(kind, -1, u), sym(kind, -1, v)), W(sym(kind, -1, u + v)),
                   None, p, t.note)
    if rid in ("R3", "R4"):
        kind = "H1" if rid == "R3" else "H2"
        s, tt = p["s"], p["t"]
        return _mk(rid, t.klass, t.description,
                   W(sym(kind, None, s), sym(kind, None, tt)), W(sym(kind, None, s * tt)),
                   None, p, t.note)
    if rid == "R5":
        s, tt = p["s"], p["t"]
        return _mk(rid, t.klass, t.description,
                   W(sym("H1", None, s), sym("H2", None, tt)),
                   W(sym("H2", None, tt), sym("H1", None, s)), None, p, t.note)
    if rid in ("R6", "R7"):
        u = p["u"]
        inner, outk = ("X", "Y") if rid == "R6" else ("Y", "X")
        lhs = W(w_1) * W(sym(inner, -1, u)) * W(w_1).inverse()
        return _mk(rid, t.klass, t.description, lhs, W(sym(outk, -1, -u)), None, p, t.note)
    if rid == "R8":
        s, tt = p["s"], p["t"]
        lhs = W(sym("Y", -1, -tt), sym("X", -1, s), sym("Y", -1, tt))
        rhs = W(sym("X", -1, -1 / tt), sym("Y", -1, -tt * tt * s), sym("X", -1, 1 / tt))
        return _mk(rid, t.klass, t.description, lhs, rhs, None, p, t.note)
    if rid == "R9":
        s = p["s"]
        lhs = W(sym("W", -1, s), w_1)
        rhs = W(sym("H1", None, -s), sym("H2", None, -1 / s))
        return _mk(rid, t.klass, t.description, lhs, rhs, None, p, t.note)
    if rid in ("R10", "R11"):
        s = p["s"]
        inner, outk = ("H1", "H2") if rid == "R10" else ("H2", "H1")
        lhs = W(w_1) * W(sym(inner, None, s)) * W(w_1).inverse()
        return _mk(rid, t.klass, t.description, lhs, W(sym(outk, None, s)), None, p, t.note)
    if rid in ("R12", "R13", "R14", "R15"):
        s, u = p["s"], p["u"]
        hk = "H1" if rid in ("R12", "R14") else "H2"
        xk = "X" if rid in ("R12", "R13") else "Y"
        scal = {"R12": s, "R13": 1 / s, "R14": 1 / s, "R15": s}[rid]
        h = sym(hk, None, s)
        lhs = GroupWord([(h, 1), (sym(xk, -1, u), 1), (h, -1)])
        return _mk(rid, t.klass, t.description, lhs, W(sym(xk, -1, scal * u)), None, p, t.note)
    if rid == "R16":
        idx1, idx2 = index
        u, v = p["u"], p["v"]
        lhs = commutator(W(sym("X", idx1, u)), W(sym("Y", idx2, v)))
        return _mk(rid, t.klass, t.description, lhs, GroupWord(), index, p, t.note)
    if rid in ("R17", "R18"):
        kind = "X" if rid == "R17" else "Y"
        u, v = p["u"], p["v"]
        return _mk(rid, t.klass, t.description,
                   W(sym(kind, index, u + v)), W(sym(kind, index, u), sym(kind, index, v)),
                   index, p, t.note)
    if rid in ("R19", "R20", "R21", "R22"):
        s, tt = p["s"], p["t"]
        realk = "X" if rid in ("R19", "R21") else "Y"
        imagk = "X" if rid in ("R19", "R20") else "Y"
        lhs = commutator(W(sym(realk, -1, s)), W(sym(imagk, index, tt)))
        return _mk(rid, t.klass, t.description, lhs, GroupWord(), index, p, t.note)
    if rid in ("R23", "R24"):
        u = p["u"]
        l, j, k = index
        kind = "X" if rid == "R23" else "Y"
        scal = Fraction((-1) ** l) if rid == "R23" else Fraction((-1) ** (j - 1 - l))
        lhs = W(w_1) * W(sym(kind, index, u)) * W(w_1).inverse()
        rhs = W(sym(kind, (j - 1 - l, j, k), scal * u))
        return _mk(rid, t.klass, t.description, lhs, rhs, index, p, t.note)
    if rid in ("R25", "R26", "R27", "R28"):
        s, u = p["s"], p["u"]
        l, j, _k = index
        hk = "H1" if rid in ("R25", "R26") else "H2"
        xk = "X" if rid in ("R25", "R27") else "Y"
        expo = (l + 1) if hk == "H1" else (j - l)
        if xk == "Y":
            expo = -expo
        h = sym(hk, None, s)
        lhs = GroupWord([(h, 1), (sym(xk, index, u), 1), (h, -1)])
        rhs = W(sym(xk, index, s ** expo * u))
        return _mk(rid, t.klass, t.description, lhs, rhs, index, p, t.note)
    if rid == "R29":
        sigma = p["sigma"]
        l, j, _k = index
        s = -((-sigma) ** ((l + 1) * (j - l)))
        lhs = W(sym("W", index, s), sym("W", index, 1))
        rhs = W(sym("H1", None, (-sigma) ** (j - l)), sym("H2", None, (-sigma) ** (l + 1)))
        return _mk(rid, t.klass, t.description, lhs, rhs, index, {"sigma": sigma, "s": s}, t.note)
    if rid == "R30":
        s, tt = p["s"], p["t"]
        l, j, _k = index
        c = c_const(l, j)
        lhs = W(sym("Y", index, -tt), sym("X", index, s), sym("Y", index, tt))
        rhs = W(sym("X", index, -1 / (tt * c)), sym("Y", index, -c * tt * tt * s),
                sym("X", index, 1 / (tt * c)))
        return _mk(rid, t.klass, t.description, lhs, rhs, index, p, t.note)
    if rid in ("R31", "R32"):
        tau = p["tau"]
        l, j, _k = index
        w1 = sym("W", index, 1)
        if rid == "R31":
            s = tau ** (j - l)
            rhs = W(sym("H2", None, tau ** (-(l + 1))))
            lhs_mid = sym("H1", None, s)
        else:
            s = tau ** (l + 1)
            rhs = W(sym("H1", None, tau ** (-(j - l))))
            lhs_mid = sym("H2", None, s)
        lhs = W(w1) * W(lhs_mid) * W(w1).inverse()
        return _mk(rid, t.klass, t.description, lhs, rhs, index, {"tau": tau, "s": s}, t.note)
    if rid in ("R33", "R34"):
        u = p["u"]
        l, j, _k = index
        c = c_const(l, j)
        w1 = sym("W", index, 1)
        kind_in, kind_out = ("X", "Y") if rid == "R33" else ("Y", "X")
        scal = -u / c if rid == "R33" else -c * u
        lhs = W(w1) * W(sym(kind_in, index, u)) * W(w1).inverse()
        rhs = W(sym(kind_out, index, scal))
        return _mk(rid, t.klass, t.description, lhs, rhs, index, p, t.note)
    if rid == "R35":
        sigma = p["sigma"]
        l, j, _k = index
        c = c_const(l, j)
        s = -(sigma ** ((l + 1) * (j - l))) / c
        lhs = W(sym("Y", index, s))
        rhs = W(sym("X", index, 1 / (s * c)),
                sym("H1", None, sigma ** (-(j - l))),
                sym("H2", None, sigma ** (-(l + 1))),
                sym("W", index, 1),
                sym("X", index, 1 / (s * c)))
        return _mk(rid, t.klass, t.description, lhs, rhs, index, {"sigma": sigma, "s": s}, t.note)
    raise KeyError(rid)


# ---------------------------------------------------------------------------
# sweep driver

DEFAULT_SAMPLES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2))


def _indices_for(template: RelationTemplate, cfg: SupportConfig) -> list:
    letters = [(L[2], L[0], L[1]) for L in cfg.letters()]  # display order (l, j, k)
    if template.indexed == "":
        return [None]
    if template.indexed == "letter":
        return letters
    if template.indexed == "letter-l0":
        return [x for x in letters if x[0] == 0]
    if template.indexed == "letter-top":
        return [x for x in letters if x[0] == x[1] - 1]
    if template.indexed == "pair":
        return [(a, b) for a in letters for b in letters]
    raise ValueError(template.indexed)


def _param_choices(template: RelationTemplate, samples) -> list:
    mult_named = {"s", "t", "sigma", "tau"}
    opts = []
    for name in template.param_names:
        vals = [Fraction(x) for x in samples]
        if name in mult_named:
            vals = [v for v in vals if v != 0]
        opts.append((name, vals))
    combos = [{}]
    for name, vals in opts:
        combos = [{**c, name: v} for c in combos for v in vals]
    return combos


def _shadow_check_r16(cfg: SupportConfig) -> dict:
    """Lie-level sweep of the cross-string commutation pattern."""
    letters = list(cfg.letters())
    failures = []
    reading_flags = []
    adjacent_info = []
    n = 0
    for Lp in letters:
        for Ln in letters:
            jp, kp, lp = Lp
            jn, kn, ln = Ln
            val = monster.bracket(MonsterElt.e_word((Lp,)), MonsterElt.f_word((Ln,)))
            if (jp, kp) != (jn, kn):
                n += 1
                if not val.is_zero():
                    failures.append(f"[e({lp},{jp},{kp}), f({ln},{jn},{kn})] = "
                                    f"{monster.format_elt(val)}")
                if (jp == jn) != (kp == kn):
                    reading_flags.append(
                        f"(l,j,k)=({lp},{jp},{kp}) vs (m,p,q)=({ln},{jn},{kn}): "
                        "strings share exactly one of j=p / k=q; commutation asserted "
                        "under the inclusive-or reading only")
            elif abs(lp - ln) > 1:
                n += 1
                if not val.is_zero():
                    failures.append(f"[e({lp},{jp},{kp}), f({ln},{jn},{kn})] = "
                                    f"{monster.format_elt(val)}")
            elif lp != ln:
                adjacent_info.append(
                    f"same string, |l-m|=1: [e({lp},{jp},{kp}), f({ln},{jn},{kn})] = "
                    f"{monster.format_elt(val)} (no commutation claimed by the catalog)")
    return {"id": "R16", "class": "UNVALIDATED",
            "status": "supported, not validated" if not failures else "contradicted",
            "instances": n, "failures": failures,
            "reading_flags": sorted(set(reading_flags)),
            "adjacent_unconstrained": adjacent_info, "pass": not failures}


def validate_catalog(N: int, cfg: SupportConfig, samples=DEFAULT_SAMPLES,
                     suites=("adjoint", "sl2")) -> dict:
    """Run every catalog family over the sampled parameters and indices."""
    rows = []
    for template in _CATALOG:
        if template.klass == "UNVALIDATED":
            if "adjoint" in suites:
                rows.append(_shadow_check_r16(cfg))
            continue
        if template.klass in ("ADJOINT", "MIRROR") and "adjoint" not in suites:
            continue
        if template.klass == "SL2" and "sl2" not in suites:
            continue
        failures = []
        count = 0
        for index in _indices_for(template, cfg):
            for params in _param_choices(template, samples):
                inst = build_instance(template.rid, params, index)
                if template.klass == "MIRROR":
                    res = validate_adjoint(mirror_relation(inst), N, cfg)
                elif template.klass == "ADJOINT":
                    res = validate_adjoint(inst, N, cfg)
                else:
                    res = validate_sl2(inst, index)
                count += 1
                if not res["pass"]:
                    failures.append({"index": index,
                                     "params": {k: str(v) for k, v in params.items()}})
        rows.append({"id": template.rid, "class": template.klass,
                     "template": template.description, "instances": count,
                     "failures": failures, "note": template.note,
                     "pass": not failures})
    return {"truncation": N,
            "caps": {str(j): cfg.cap(j) for j in sorted(cfg.caps)},
            "samples": [str(Fraction(s)) for s in samples],
            "results": rows,
            "all_pass": all(r["pass"] for r in rows)}


# ---------------------------------------------------------------------------
# freeness evidence

def free_separation_test(words, N: int, cfg: SupportConfig) -> dict:
    """Realize each word and look for coincidences of the truncated action.

    Pairwise distinctness supports (but cannot prove) freeness; any
    collision would falsify it.
    """
    sigs = {}
    order = []
    for w in words:
        g = realize_word(w, N, cfg)
        sig = json.dumps(g.report_dict().get("images"), sort_keys=True)
        sigs.setdefault(sig, []).append(format_word(w))
        order.append(format_word(w))
    collisions = sorted(group for group in sigs.values() if len(group) > 1)
    return {"words": len(order), "distinct": len(sigs),
            "collisions": collisions, "pass": not collisions}
