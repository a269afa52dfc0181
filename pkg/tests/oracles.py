"""Independent reference computations used as test oracles.

Everything here recomputes results by a different route than the
package code: associative-algebra expansion instead of Lyndon
straightening, an explicit linear recurrence instead of the Jacobi
recursion, the pentagonal-number series instead of the Euler product,
and Moebius counting instead of the log-series dimension solver.
"""

from fractions import Fraction
from math import comb


# ---------------------------------------------------------------------------
# free Lie algebra via the free associative algebra

def is_lyndon_naive(w) -> bool:
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def std_split_naive(w):
    # right factor = lexicographically least proper suffix, by direct scan
    best, besti = None, None
    for i in range(1, len(w)):
        if best is None or w[i:] < best:
            best, besti = w[i:], i
    return w[:besti], w[besti:]


def assoc_expansion(w) -> dict:
    """Expansion of the bracketed Lyndon word in the free associative algebra."""
    if len(w) == 1:
        return {tuple(w): 1}
    u, v = std_split_naive(w)
    a, b = assoc_expansion(u), assoc_expansion(v)
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            for m, s in ((m1 + m2, 1), (m2 + m1, -1)):
                n = out.get(m, 0) + s * c1 * c2
                if n:
                    out[m] = n
                else:
                    out.pop(m, None)
    return out


def assoc_commutator(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            for m, s in ((m1 + m2, 1), (m2 + m1, -1)):
                n = out.get(m, 0) + s * c1 * c2
                if n:
                    out[m] = n
                else:
                    out.pop(m, None)
    return out


def lie_to_lyndon(poly: dict) -> dict:
    """Coordinates of a Lie element in the Lyndon basis.

    Uses the triangularity of the expansion: the lexicographically least
    monomial of a bracketed Lyndon word is the word itself, with
    coefficient 1.  Raises if the input is not a Lie element.
    """
    p = dict(poly)
    res: dict = {}
    while p:
        w = min(p)
        if not is_lyndon_naive(w):
            raise ValueError(f"leading monomial {w} is not Lyndon; input not Lie")
        c = p.pop(w)
        res[w] = c
        for m, cc in assoc_expansion(w).items():
            if m == w:
                continue
            n = p.get(m, 0) - c * cc
            if n:
                p[m] = n
            else:
                p.pop(m, None)
    return res


def bracket_oracle(u, v) -> dict:
    """[b_u, b_v] in Lyndon coordinates, computed associatively."""
    return lie_to_lyndon(assoc_commutator(assoc_expansion(u), assoc_expansion(v)))


# ---------------------------------------------------------------------------
# string action recurrence

def lowering_coefficients(j: int) -> list:
    """beta_l with [lowering, string_l] = beta_l * string_(l-1), solved from
    the weight identity l*beta_l - (l+1)*beta_(l+1) = 2l+1-j, beta_0 = 0."""
    beta = [Fraction(0)]
    for l in range(j):
        w = 2 * l + 1 - j
        beta.append(Fraction(l * beta[l] - w, l + 1))
    return beta


# ---------------------------------------------------------------------------
# closed forms for the mixed-sector pairings (derived once by hand in the
# enveloping algebra of the real sl2; the package derives them recursively)

def diag_pairing(l: int, j: int) -> dict:
    s = (-1) ** (l + 1) * comb(j - 1, l)
    return {"h1": s * (j - l), "h2": s * (l + 1)}


def up_pairing(l: int, j: int) -> int:
    # coefficient of the raising real generator in [string_(l+1), mirror_l]
    return (-1) ** l * comb(j - 1, l) * (j - l - 1)


def down_pairing(l: int, j: int) -> int:
    # coefficient of the lowering real generator in [string_l, mirror_(l+1)]
    return (-1) ** (l + 1) * comb(j - 1, l) * (j - l - 1)


# ---------------------------------------------------------------------------
# counting

def mobius(n: int) -> int:
    if n == 1:
        return 1
    m, p, cnt = n, 2, 0
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            cnt += 1
        else:
            p += 1
    if m > 1:
        cnt += 1
    return (-1) ** cnt


def lyndon_count(alphabet_size: int, length: int) -> int:
    """Number of Lyndon words of exact length n over a letters (Moebius/necklace)."""
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += mobius(d) * alphabet_size ** (length // d)
    assert total % length == 0
    return total // length


# ---------------------------------------------------------------------------
# pentagonal-number route to the weight-12 cusp form

def euler_function_pentagonal(nmax: int) -> list:
    """prod (1-q^n) as a list of coefficients, via the pentagonal sparse series."""
    out = [0] * (nmax + 1)
    k = 0
    while True:
        hit = False
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e <= nmax:
                out[e] += (-1) ** (kk % 2)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return out


def _poly_mul(a: list, b: list, nmax: int) -> list:
    out = [0] * (nmax + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for jj, y in enumerate(b):
            if i + jj > nmax:
                break
            out[i + jj] += x * y
    return out


def delta_pentagonal(nmax: int) -> dict:
    """Coefficients of the weight-12 cusp form, q * euler^24, exact integers."""
    e = euler_function_pentagonal(nmax)
    p = [1] + [0] * nmax
    acc = e
    power = 24
    result = [1] + [0] * nmax
    while power:
        if power & 1:
            result = _poly_mul(result, acc, nmax)
        power >>= 1
        if power:
            acc = _poly_mul(acc, acc, nmax)
    return {n + 1: result[n] for n in range(nmax + 1)}
