"""Closed-form evaluations and relations among (alternating) multiple zeta
values, built as exact ``LinComb`` objects over convergent signed indices.

Conventions used throughout this module:

* ``Z(-n)`` is the alternating single written elsewhere as "n with a bar";
  it is kept as an atom unless a normalisation pass is applied explicitly.
* Powers of pi are carried as powers of the zeta(2) atom, via
  ``pi^(2m) = 6^m * zeta(2)^m``, so every coefficient stays rational.
* Divergent indices are expanded through shuffle regularisation at T = 0.
  Harmonic (stuffle) regularisation appears only in the depth-3 parity
  machinery, where it is immediately rewritten into a form independent of
  the regularisation parameter; no symbolic T ever leaves this module.
* The conventions zeta(0) = zeta(0 bar) = -1/2 and zeta(1) = 0 apply only
  inside formulas whose statement declares them (`_z` / `_zbar` below).

Identity constructors return either a bare ``LinComb`` (when the object is
a value, e.g. ``zeta_two_blocks``) or an ``IdentityInstance`` pairing an
exact left-hand side with an exact right-hand side.  Equality of the two
sides is then a matter for the numeric engine or for exact rewriting --
never asserted here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

from .exactalg import bernoulli, binom, euler_number
from .mzvword import (
    LinComb,
    SignedIndex,
    Word,
    index_to_word,
    interp_expand,
    lift_divergent_word,
    shuffle_regularize,
    stuffle,
)

Z = SignedIndex.of

Rat = Union[int, Fraction]


# ---------------------------------------------------------------------------
# even zeta values, pi powers, and the shorthand singles
# ---------------------------------------------------------------------------

def zeta_even_rational(m: int) -> Fraction:
    """zeta(2m) / pi^(2m) as an exact rational (m >= 0; m = 0 gives -1/2)."""
    if m < 0:
        raise ValueError("negative even-zeta index")
    return Fraction((-1) ** (m + 1) * 2 ** (2 * m), 2 * factorial(2 * m)) * bernoulli(2 * m)


def pi_power(n: int) -> LinComb:
    """pi^n as a LinComb monomial in the zeta(2) atom; n must be even."""
    if n % 2:
        raise ValueError("odd pi power has no rational zeta(2) expression")
    m = n // 2
    if m == 0:
        return LinComb.one()
    return LinComb({(Z(2),) * m: Fraction(6 ** m)})


def zeta_even(n: int) -> LinComb:
    """zeta(n) for even n >= 2 as a rational multiple of zeta(2)^(n/2)."""
    if n < 2 or n % 2:
        raise ValueError("zeta_even wants an even argument >= 2")
    return zeta_even_rational(n // 2) * pi_power(n)


def zeta_two_blocks(n: int) -> LinComb:
    """zeta({2}^n) = pi^(2n) / (2n+1)!."""
    if n < 0:
        raise ValueError("negative block length")
    return pi_power(2 * n) / factorial(2 * n + 1)


def zetastar_two_blocks(n: int) -> LinComb:
    """zeta-star({2}^n) = 2(1 - 2^(1-2n)) zeta(2n) for n >= 1, and 1 at n = 0."""
    if n < 0:
        raise ValueError("negative block length")
    if n == 0:
        return LinComb.one()
    return (2 - Fraction(4, 4 ** n)) * zeta_even(2 * n)


def _z(n: int) -> LinComb:
    """Single zeta with the declared conventions zeta(0) = -1/2, zeta(1) = 0."""
    if n == 0:
        return LinComb.const(Fraction(-1, 2))
    if n == 1:
        return LinComb.zero()
    return LinComb.atom(Z(n))


def _zbar(n: int) -> LinComb:
    """Alternating single with zeta(0 bar) = -1/2; n = 1 is the log-2 atom."""
    if n == 0:
        return LinComb.const(Fraction(-1, 2))
    return LinComb.atom(Z(-n))


def _zs(x: int) -> LinComb:
    """Single for a signed argument (negative = alternating)."""
    return _zbar(-x) if x < 0 else _z(x)


# ---------------------------------------------------------------------------
# regularisation of divergent indices
# ---------------------------------------------------------------------------

def shuffle_reg_index(idx: SignedIndex) -> LinComb:
    """Shuffle-regularised (T = 0) expansion of an arbitrary signed index.

    Convergent indices come back as themselves; a divergent tail or leading
    zeros are removed word-by-word, so the result is a LinComb of convergent
    atoms representing the same regularised value.
    """
    if idx.convergent and idx.lead_zeros == 0:
        return LinComb.atom(idx)
    if idx.parts and idx.parts[-1] != (1, 1):
        return shuffle_regularize(idx)
    sign, word = index_to_word(idx)
    return Fraction(sign) * lift_divergent_word(word)


def _compositions_nonneg(total: int, d: int) -> Iterable[Tuple[int, ...]]:
    if d == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions_nonneg(total - first, d - 1):
            yield (first,) + rest


def distribute_lead_zeros(idx: SignedIndex) -> LinComb:
    """Push leading zeros into the exponents by the shuffle composition
    formula, then give any (1,+1)-tailed atom its T = 0 harmonic value.

    The zero-distribution step is blind to the tail.  On a divergent tail
    the harmonic assignment agrees in value with the word-level shuffle
    lift (a single trailing one carries the same T = 0 value in both
    worlds) but decomposes it differently; this is the expansion under
    which the harmonic and shuffle reductions of the star family match
    atom for atom.
    """
    l, parts = idx.lead_zeros, idx.parts
    d = len(parts)
    if d == 0:
        return LinComb.one() if l == 0 else LinComb.zero()
    sign = (-1) ** l
    out = LinComb.zero()
    for comp in _compositions_nonneg(l, d):
        coeff = sign
        new = []
        for (k, e), i in zip(parts, comp):
            coeff *= binom(k + i - 1, i)
            new.append((k + i) * e)
        if coeff:
            out = out + coeff * _stuffle_reg_cached(Z(*new), Fraction(0))
    return out


def shuffle_antipode_reverse(idx: SignedIndex) -> LinComb:
    """Rewrite an index through the shuffle antipode,

        reg(w) = -(-1)^{|w|} reg(reverse w)
                 - sum over proper w = uv of (-1)^{|u|} reg(reverse u) reg(v),

    with every factor a T = 0 word lift.  This expresses the value as the
    reversed index modulo products -- the classical reversal trick, and the
    expansion under which solving the even dihedral identity against the
    doubling identity lands exactly on the printed Galois descent.
    """
    sign, word = index_to_word(idx)
    letters = word.letters
    n = len(letters)
    out = -Fraction((-1) ** n) * lift_divergent_word(Word(letters[::-1]))
    for j in range(1, n):
        left = lift_divergent_word(Word(letters[:j][::-1]))
        if left == LinComb.zero():
            continue
        out = out - Fraction((-1) ** j) * left * lift_divergent_word(
            Word(letters[j:]))
    return Fraction(sign) * out


@lru_cache(maxsize=None)
def _stuffle_reg_cached(idx: SignedIndex, t: Fraction) -> LinComb:
    parts = idx.parts
    if idx.convergent:
        return LinComb.atom(idx)
    if len(parts) == 1:  # the divergent single (1, +1)
        return LinComb.const(t)
    head = Z(*[k * e for k, e in parts[:-1]])
    prod = stuffle(head, Z(1))
    mult = prod.coeff(idx)
    acc = t * _stuffle_reg_cached(head, t)
    for mono, c in prod.items():
        other = mono[0]
        if other == idx:
            continue
        acc = acc - c * _stuffle_reg_cached(other, t)
    return acc / mult


def stuffle_reg_at(idx: SignedIndex, t: Rat = 0) -> LinComb:
    """Harmonic-regularised expansion of ``idx`` at parameter value ``t``.

    Defined by zeta*(1) = t and downward recursion through the quasi-shuffle
    product with the single (1); e.g. zeta*(1,1) -> (t^2 - zeta(2))/2 and
    zeta*(k,1) -> t*zeta(k) - zeta(1,k) - zeta(k+1).
    """
    if idx.lead_zeros:
        raise ValueError("harmonic regularisation needs a pure index (no leading zeros)")
    return _stuffle_reg_cached(idx, Fraction(t))


def _zz_reg(x: int, y: int, t: Rat) -> LinComb:
    """Depth-2 zeta for signed arguments, harmonically regularised if needed."""
    idx = Z(x, y)
    if idx.convergent:
        return LinComb.atom(idx)
    return stuffle_reg_at(idx, t)


def _zs_reg(x: int, t: Rat) -> LinComb:
    """Signed single with the divergent value zeta*(1) = t."""
    if x == 1:
        return LinComb.const(Fraction(t))
    return _zs(x)


# ---------------------------------------------------------------------------
# normalisation passes
# ---------------------------------------------------------------------------

def expand_alternating_singles(c: LinComb) -> LinComb:
    """Rewrite every depth-1 alternating atom via zeta(n bar) = -(1-2^(1-n)) zeta(n).

    The weight-1 atom (log 2) has no classical counterpart and is kept.
    """

    def sub(a: SignedIndex) -> LinComb:
        if a.depth == 1 and a.lead_zeros == 0:
            k, e = a.parts[0]
            if e == -1 and k >= 2:
                return (Fraction(2, 2 ** k) - 1) * LinComb.atom(Z(k))
        return LinComb.atom(a)

    return c.map_atoms(sub)


def expand_even_singles(c: LinComb) -> LinComb:
    """Rewrite every even classical single as a rational power of zeta(2)."""

    def sub(a: SignedIndex) -> LinComb:
        if a.depth == 1 and a.lead_zeros == 0:
            k, e = a.parts[0]
            if e == 1 and k >= 2 and k % 2 == 0:
                return zeta_even(k)
        return LinComb.atom(a)

    return c.map_atoms(sub)


def normalize_lincomb(c: LinComb) -> LinComb:
    """Canonical form for exact comparisons: alternating singles expanded to
    classical ones, even singles expanded to zeta(2) powers."""
    return expand_even_singles(expand_alternating_singles(c))


def linearize_products(c: LinComb) -> LinComb:
    """Replace every product monomial by its quasi-shuffle (stuffle) expansion,
    so the result carries only single-atom monomials (plus constants)."""
    out = LinComb.zero()
    for mono, coeff in c.items():
        if len(mono) <= 1:
            out = out + LinComb({mono: coeff})
            continue
        acc = LinComb.atom(mono[0])
        for atom in mono[1:]:
            nxt = LinComb.zero()
            for m2, c2 in acc.items():
                nxt = nxt + c2 * stuffle(m2[0], atom)
            acc = nxt
        out = out + coeff * acc
    return out


def rewrite_zeta1_even_bar(c: LinComb) -> LinComb:
    """Apply zeta(1, 2b+2 bar) = -sum_{2s+k=2b+3} zeta(2s bar) zeta(k) +
    (2b+1)/2 * zeta(2b+3 bar) to every atom of that shape (depth-parity
    reduction in depth 2), leaving all other atoms alone."""

    def sub(a: SignedIndex) -> LinComb:
        if a.depth == 2 and a.lead_zeros == 0:
            (k1, e1), (k2, e2) = a.parts
            if (k1, e1) == (1, 1) and e2 == -1 and k2 % 2 == 0:
                b = (k2 - 2) // 2
                out = Fraction(2 * b + 1, 2) * _zbar(2 * b + 3)
                for s in range(0, b + 1):
                    out = out - _zbar(2 * s) * _z(2 * b + 3 - 2 * s)
                return out
        return LinComb.atom(a)

    return c.map_atoms(sub)


def flip_depth2(c: LinComb) -> LinComb:
    """Canonical form modulo products for classical depth-2 atoms of even
    weight: zeta(p,q) with p > q flips to -zeta(q,p), the diagonal dies.

    These are exactly the consequences of the stuffle product
    zeta(p)zeta(q) = zeta(p,q) + zeta(q,p) + zeta(p+q) once all products
    (including even singles) are discarded.
    """
    out: Dict[tuple, Fraction] = {}
    for mono, coeff in c.items():
        if len(mono) != 1:
            raise ValueError("flip_depth2 wants single-atom monomials")
        a = mono[0]
        if a.depth != 2 or a.lead_zeros or any(e != 1 for _, e in a.parts):
            raise ValueError(f"flip_depth2 wants classical depth-2 atoms, got {a!r}")
        (p, _), (q, _) = a.parts
        if (p + q) % 2:
            raise ValueError("flip_depth2 is an even-weight reduction")
        if p == q:
            continue
        if p > q:
            key, coeff = (Z(q, p),), -coeff
        else:
            key = (Z(p, q),)
        out[key] = out.get(key, Fraction(0)) + coeff
    return LinComb({k: v for k, v in out.items() if v})


def euler_shuffle_singles(x: SignedIndex, y: SignedIndex) -> LinComb:
    """Shuffle-expand a product of two depth-1 values into depth-2 terms.

    The word of a single is one sign letter followed by k-1 zeros, so every
    interleaving reads eta 0^{c1} eta' 0^{c2}; counting the interleavings
    gives the classical Euler decomposition with binomial multiplicities.
    Any (1,+1)-tailed output (possible only when a factor is the divergent
    zeta(1)) is lifted at T = 0.
    """
    if x.depth != 1 or y.depth != 1 or x.lead_zeros or y.lead_zeros:
        raise ValueError("euler_shuffle_singles wants plain singles")
    (p, ep), = x.parts
    (q, eq), = y.parts
    out = LinComb.zero()
    for (m, em), (n, en) in (((p, ep), (q, eq)), ((q, eq), (p, ep))):
        # m's sign letter comes first; the zeros before the second sign
        # letter are all m's, the rest interleave freely.
        for c1 in range(m):
            c2 = m + n - 2 - c1
            coeff = binom(m - 1 - c1 + n - 1, n - 1)
            if coeff:
                out = out + coeff * shuffle_reg_index(
                    Z((c1 + 1) * em * en, (c2 + 1) * en))
    return out


def double_shuffle_relations(weight: int) -> List[LinComb]:
    """All stuffle-minus-shuffle relations of pairs of signed singles of the
    given total weight, each expanded to a LinComb that is exactly zero.

    Divergent spots are T = 0 regularized in their own world (harmonic
    recursion on the stuffle side, word lift on the shuffle side); the two
    assignments agree on every index with a single trailing (1,+1), so each
    returned combination still represents zero.
    """
    rels: List[LinComb] = []
    for p in range(1, weight // 2 + 1):
        q = weight - p
        for ep in (1, -1):
            for eq in (1, -1):
                if p == q and (ep, eq) == (-1, 1):
                    continue
                x, y = Z(p * ep), Z(q * eq)
                st = LinComb.zero()
                for mono, c in stuffle(x, y).items():
                    st = st + c * _stuffle_reg_cached(mono[0], Fraction(0))
                rels.append(st - euler_shuffle_singles(x, y))
    return [r for r in rels if r != LinComb.zero()]


def reg_comparison_relations(weight: int) -> List[LinComb]:
    """Differences of the two T = 0 expansions of zeta(m, 1), m >= 2.

    A single trailing (1,+1) is the case where harmonic and shuffle
    regularization assign the same value while decomposing it differently
    (e.g. -zeta(1,3)-zeta(4) versus -2zeta(1,3)-zeta(2,2)); the difference
    of the expansions is therefore an exact relation.
    """
    rels = []
    m = weight - 1
    if m >= 2:
        for em in (1, -1):
            idx = Z(m * em, 1)
            rels.append(_stuffle_reg_cached(idx, Fraction(0))
                        - shuffle_reg_index(idx))
    return [r for r in rels if r != LinComb.zero()]


def distribution_relations(weight: int) -> List[LinComb]:
    """Depth-2 distribution: summing a double zeta over all four sign
    patterns halves each exponent's scale,

        sum_{signs} zeta(+-a, +-b) = 2^(2-a-b) zeta(a, b),

    stated for convergent tails (b >= 2 here)."""
    rels = []
    for a in range(1, weight - 1):
        b = weight - a
        if b < 2:
            continue
        lhs = (LinComb.atom(Z(a, b)) + LinComb.atom(Z(-a, b))
               + LinComb.atom(Z(a, -b)) + LinComb.atom(Z(-a, -b)))
        rels.append(lhs - Fraction(4, 2 ** weight) * LinComb.atom(Z(a, b)))
    return rels


def _single_monomials(m: int) -> List[LinComb]:
    """All monomials of total weight m in zeta(2) and odd zetas >= 3."""
    shapes: List[Tuple[int, ...]] = []

    def rec(rem: int, cap: int, acc: Tuple[int, ...]) -> None:
        if rem == 0:
            shapes.append(acc)
            return
        for part in range(min(rem, cap), 1, -1):
            if part == 2 or part % 2:
                rec(rem - part, part, acc + (part,))

    rec(m, m, ())
    out = []
    for shape in shapes:
        mono = LinComb.one()
        for part in shape:
            mono = mono * LinComb.atom(Z(part))
        out.append(mono)
    return out


def relation_span_rows(weight: int) -> List[LinComb]:
    """Zero-valued rows spanning the depth <= 2 relations used by the exact
    cross-checks: double-shuffle of single pairs, regularization comparisons
    and distribution, at every weight, padded up by single-zeta monomials.
    All rows are normalized so targets must be normalized the same way.
    """
    rows: List[LinComb] = []
    for w in range(2, weight + 1):
        base = (double_shuffle_relations(w) + reg_comparison_relations(w)
                + distribution_relations(w))
        if not base:
            continue
        if w == weight:
            mults = [LinComb.one()]
        else:
            mults = _single_monomials(weight - w)
        for mult in mults:
            for rel in base:
                row = normalize_lincomb(mult * rel)
                if row != LinComb.zero():
                    rows.append(row)
    return rows


def in_relation_span(target: LinComb, relations: Sequence[LinComb]) -> bool:
    """Exact test that target is a rational combination of the relations.

    Sparse Gaussian elimination over the product monomials; everything stays
    in Fraction arithmetic, so a True answer is a certificate that the
    target's value is zero.
    """
    pivots: Dict[tuple, LinComb] = {}

    def reduce(vec: LinComb) -> LinComb:
        changed = True
        while changed:
            changed = False
            for mono, coeff in vec.items():
                row = pivots.get(mono)
                if row is not None:
                    vec = vec - (coeff / row.coeff(*mono)) * row
                    changed = True
                    break
        return vec

    for rel in relations:
        rel = reduce(rel)
        items = list(rel.items())
        if items:
            pivots[items[0][0]] = rel
    return reduce(target) == LinComb.zero()


# ---------------------------------------------------------------------------
# identity container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityInstance:
    """One displayed identity at concrete parameters, both sides exact."""

    id: str
    params: Tuple[int, ...]
    lhs: LinComb
    rhs: LinComb

    @property
    def residual(self) -> LinComb:
        return self.lhs - self.rhs


# ---------------------------------------------------------------------------
# generating-function families and the star closed form in depth 2+1
# ---------------------------------------------------------------------------

def zetastar_223(a: int, b: int) -> LinComb:
    """Closed form for zeta-star({2}^a, 3, {2}^b) in odd singles:

    -2 sum_{s=1}^{a+b+1} [C(2s,2a) - delta_{s=a} - (1-2^(-2s)) C(2s,2b+1)]
        * zeta-star({2}^(a+b+1-s)) * zeta(2s+1).
    """
    if a < 0 or b < 0:
        raise ValueError("block lengths must be nonnegative")
    out = LinComb.zero()
    for s in range(1, a + b + 2):
        coeff = Fraction(binom(2 * s, 2 * a) - (1 if s == a else 0))
        coeff -= (1 - Fraction(1, 4 ** s)) * binom(2 * s, 2 * b + 1)
        if not coeff:
            continue
        out = out - 2 * coeff * zetastar_two_blocks(a + b + 1 - s) * _z(2 * s + 1)
    return out


def _index_2242(a: int, b: int) -> SignedIndex:
    return Z(*([2] * a + [4] + [2] * b))


def _star_2242_expanded(a: int, b: int) -> LinComb:
    """zeta-star({2}^a, 4, {2}^b) written out in ordinary MZV atoms."""
    return interp_expand(_index_2242(a, b), 1)


def stuffle_antipode_2242(a: int, b: int) -> IdentityInstance:
    """Antipode flip between zeta({2}^a,4,{2}^b) and the star family:

    zeta({2}^a,4,{2}^b) = sum_{n<=a, m<=b} (-1)^(m+n)
        zeta-star({2}^m,4,{2}^n) zeta({2}^(a-n)) zeta({2}^(b-m)).
    """
    rhs = LinComb.zero()
    for n in range(a + 1):
        for m in range(b + 1):
            rhs = rhs + Fraction((-1) ** (m + n)) * _star_2242_expanded(m, n) \
                * zeta_two_blocks(a - n) * zeta_two_blocks(b - m)
    return IdentityInstance("stuffle-antipode-2242", (a, b),
                            LinComb.atom(_index_2242(a, b)), rhs)


def two_one_2242_block(a: int, b: int) -> LinComb:
    """The half-interpolated form -8 zeta^(1/2)(2a+1, 1, 2b+2 bar) expanded."""
    return -8 * interp_expand(Z(2 * a + 1, 1, -(2 * b + 2)), Fraction(1, 2))


def two_one_2242(a: int, b: int) -> IdentityInstance:
    """Evaluation of the star family by one alternating block triple:

    zeta-star({2}^a,4,{2}^b) = -2 zeta(2a+2b+4 bar) - 4 zeta(2a+1, 2b+3 bar)
        - 4 zeta(2a+2, 2b+2 bar) - 8 zeta(2a+1, 1, 2b+2 bar).
    """
    w = 2 * a + 2 * b + 4
    rhs = (-2 * _zbar(w)
           - 4 * LinComb.atom(Z(2 * a + 1, -(2 * b + 3)))
           - 4 * LinComb.atom(Z(2 * a + 2, -(2 * b + 2)))
           - 8 * LinComb.atom(Z(2 * a + 1, 1, -(2 * b + 2))))
    return IdentityInstance("two-one-2242", (a, b), _star_2242_expanded(a, b), rhs)


# ---------------------------------------------------------------------------
# depth-3 parity reduction
# ---------------------------------------------------------------------------

def _oplus(x: int, m: int) -> int:
    """Add m to the weight of a signed argument, keeping its sign."""
    return x + m if x > 0 else x - m


def _parity_rhs_at(alpha: int, beta: int, gamma: int, t: Rat) -> LinComb:
    """The depth-3 parity right-hand side with zeta*(1) = t wherever the
    harmonic regularisation is invoked.  Signed integer arguments."""
    aa, ab, ag = abs(alpha), abs(beta), abs(gamma)
    if (aa + ab + ag) % 2:
        raise ValueError("parity reduction needs even total weight")
    if gamma == 1:
        raise ValueError("an unbarred 1 in the last slot is not allowed")
    sa = 1 if alpha > 0 else -1
    sb = 1 if beta > 0 else -1
    sg = 1 if gamma > 0 else -1
    sign_all = sa * sb * sg

    def diamond(s: int) -> LinComb:
        return _zs(sign_all * 2 * s) if s or sign_all > 0 else _zbar(0)

    out = LinComb.zero()
    # boundary terms; the merge of two signed slots multiplies their signs
    if (ab + ag) % 2:  # the symmetric pair survives only at odd tail weight
        out = out + _zs_reg(alpha, t) * LinComb.atom(Z(beta, gamma))
    if ag % 2 == 0:
        out = out - _zz_reg(beta, alpha, t) * _zs(gamma)
    out = out - Fraction(1, 2) * LinComb.atom(Z(sa * sb * (aa + ab), gamma))
    out = out + Fraction(1, 2) * _zz_reg(sb * sg * (ab + ag), alpha, t)
    # three binomial double sums
    for s in range(0, aa // 2 + 1):
        for mu in range(0, aa - 2 * s + 1):
            nu = aa - 2 * s - mu
            coeff = Fraction((-1) ** (ab + ag + mu + nu) * binom(-ab, mu) * binom(-ag, nu))
            if coeff:
                out = out + coeff * diamond(s) * LinComb.atom(Z(_oplus(beta, mu), _oplus(gamma, nu)))
    for s in range(0, ab // 2 + 1):
        for mu in range(0, ab - 2 * s + 1):
            nu = ab - 2 * s - mu
            coeff = Fraction((-1) ** (ag + mu) * binom(-ag, mu) * binom(-aa, nu))
            if coeff:
                out = out + coeff * diamond(s) * _zs(_oplus(gamma, mu)) * _zs_reg(_oplus(alpha, nu), t)
    for s in range(0, ag // 2 + 1):
        for mu in range(0, ag - 2 * s + 1):
            nu = ag - 2 * s - mu
            coeff = Fraction(binom(-ab, mu) * binom(-aa, nu))
            if coeff:
                out = out + coeff * diamond(s) * _zz_reg(_oplus(beta, mu), _oplus(alpha, nu), t)
    return out


def parity_depth3(alpha: int, beta: int, gamma: int) -> LinComb:
    """Reduce a depth-3 signed zeta of even weight to depth <= 2 constants.

    Arguments are signed integers (negative = alternating part).  Divergent
    pieces are harmonically regularised and the depth-parity rewrite of
    zeta(1, even bar) is applied afterwards, which removes all dependence on
    the regularisation parameter.
    """
    return rewrite_zeta1_even_bar(_parity_rhs_at(alpha, beta, gamma, 0))


# ---------------------------------------------------------------------------
# the two full reductions of the star family into depth <= 2
# ---------------------------------------------------------------------------

def zeta1_bar_reduction(b: int) -> IdentityInstance:
    """zeta(1, 2b+2 bar) = -sum zeta(2s bar) zeta(k) + (2b+1)/2 zeta(2b+3 bar)."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    lhs = LinComb.atom(Z(1, -(2 * b + 2)))
    rhs = Fraction(2 * b + 1, 2) * _zbar(2 * b + 3)
    for s in range(0, b + 1):
        rhs = rhs - _zbar(2 * s) * _z(2 * b + 3 - 2 * s)
    return IdentityInstance("zeta1bar-red", (b,), lhs, rhs)


def full_reduction_1(a: int, b: int, reg_t: Rat = 0) -> IdentityInstance:
    """First depth-2 reduction of zeta-star({2}^a,4,{2}^b), harmonic world.

    Divergent terms (only possible when a = 0) are expanded with
    zeta*(1) = reg_t; the residual dependence on reg_t disappears under
    `rewrite_zeta1_even_bar`, which tests exercise explicitly.
    """
    w = 2 * a + 2 * b + 4
    rhs = 2 * _zbar(w)
    rhs = rhs + 8 * _zz_reg(1, 2 * a + 1, reg_t) * _zbar(2 * b + 2)
    rhs = rhs - 8 * _zs_reg(2 * a + 1, reg_t) * LinComb.atom(Z(1, -(2 * b + 2)))
    rhs = rhs + 4 * (2 * b + 1) * _zbar(2 * b + 3) * _zs_reg(2 * a + 1, reg_t)
    rhs = rhs - 4 * (2 * a + 1) * _zbar(2 * b + 2) * _z(2 * a + 2)
    for s in range(0, a + 1):
        for nu in range(0, 2 * a + 1 - 2 * s + 1):
            mu = 2 * a + 1 - 2 * s - nu
            rhs = rhs + 8 * binom(nu + 2 * b + 1, nu) * _zbar(2 * s) \
                * LinComb.atom(Z(1 + mu, -(2 * b + 2 + nu)))
    for s in range(0, b + 2):
        for nu in range(0, 2 * b + 2 - 2 * s + 1):
            mu = 2 * b + 2 - 2 * s - nu
            rhs = rhs - 8 * binom(nu + 2 * a, nu) * _zbar(2 * s) \
                * _zz_reg(1 + mu, 2 * a + 1 + nu, reg_t)
    return IdentityInstance("full1", (a, b), _star_2242_expanded(a, b), rhs)


def full_reduction_2(a: int, b: int) -> IdentityInstance:
    """Second depth-2 reduction of the star family: the inner doubles carry
    leading zeros, which are pushed into the exponents by the composition
    formula (trailing-one atoms then take their T = 0 harmonic value).  Under
    this expansion the right-hand side coincides with full_reduction_1's term
    by term -- the 8 zeta(1,2a+1) zeta(2b+2 bar) piece cancels against the
    s = b+1 summand even in the doubly-divergent a = 0 case."""
    w = 2 * a + 2 * b + 4
    rhs = 2 * _zbar(w)
    rhs = rhs + 8 * distribute_lead_zeros(Z(1, 2 * a + 1)) * _zbar(2 * b + 2)
    rhs = rhs - 4 * (2 * a + 1) * _zbar(2 * b + 2) * _z(2 * a + 2)
    inner = LinComb.zero()
    for k in range(1, b + 2):
        inner = inner + _z(2 * k + 1) * _zbar(2 * b + 2 - 2 * k)
    rhs = rhs + 8 * _z(2 * a + 1) * inner
    for s in range(0, a + 1):
        rhs = rhs - 8 * _zbar(2 * s) * distribute_lead_zeros(
            Z(1, -(2 * b + 2), l=2 * a + 1 - 2 * s))
    for s in range(0, b + 2):
        rhs = rhs - 8 * _zbar(2 * s) * distribute_lead_zeros(
            Z(1, 2 * a + 1, l=2 * b + 2 - 2 * s))
    return IdentityInstance("full2", (a, b), _star_2242_expanded(a, b), rhs)


# ---------------------------------------------------------------------------
# dihedral identities for the shifted depth-2 objects
# ---------------------------------------------------------------------------

def dihedral_even(k: int, l: int) -> IdentityInstance:
    """zeta_{2k-1}(1, 2l bar) - zeta(2l bar, 2k bar) as binomials in singles."""
    if k < 1 or l < 1:
        raise ValueError("the even dihedral identity needs k, l >= 1")
    n = 2 * k + 2 * l
    lhs = shuffle_reg_index(Z(1, -2 * l, l=2 * k - 1)) - LinComb.atom(Z(-2 * l, -2 * k))
    rhs = Fraction(binom(n - 1, 2 * k - 1)) * _zbar(n)
    for r in range(1, n - 1):
        coeff = Fraction((-1) ** r * binom(r - 1, 2 * k - 1) + binom(r - 1, 2 * l - 1))
        if coeff:
            rhs = rhs - coeff * _zbar(r) * _z(n - r)
    return IdentityInstance("dihedral-even", (k, l), lhs, rhs)


def dihedral_odd(k: int, l: int) -> IdentityInstance:
    """zeta_{2k}(1, 2l+1) - zeta(2l+1, 2k+1) as binomials in singles.

    At k = l = 0 both left-hand atoms are the doubly-divergent (1,1), which
    the T = 0 shuffle regularisation sends to 0; the delta correction keeps
    the identity exact there.  (As printed in the source display the delta
    carries the opposite sign, which no assignment of zeta(1,1) can satisfy;
    with the sign used here the T = 0 value closes the identity.)
    """
    if k < 0 or l < 0:
        raise ValueError("the odd dihedral identity needs k, l >= 0")
    n = 2 * k + 2 * l + 2
    lhs = shuffle_reg_index(Z(1, 2 * l + 1, l=2 * k)) - shuffle_reg_index(Z(2 * l + 1, 2 * k + 1))
    rhs = -Fraction(binom(n - 1, 2 * l + 1)) * _z(n)
    if k == 0 and l == 0:
        rhs = rhs + zeta_even(2)
    for r in range(1, n - 1):
        coeff = Fraction((-1) ** r * binom(r - 1, 2 * k) + binom(r - 1, 2 * l))
        if coeff:
            rhs = rhs + coeff * _z(r) * _z(n - r)
    return IdentityInstance("dihedral-odd", (k, l), lhs, rhs)


# ---------------------------------------------------------------------------
# generalized doubling in depth 2
# ---------------------------------------------------------------------------

def generalized_doubling(s: int, t: int, form: int = 1) -> IdentityInstance:
    """The two displayed forms of the depth-2 doubling identity.

    form=1:  zeta(s,t) + zeta(s bar, t bar) = halved doubles - flip bracket
             - binom single;
    form=2:  zeta(s bar, t bar) + (-1)^t zeta_{t-1}(1, s bar) = halved doubles
             - zeta(s,t) + (-1)^t zeta_{t-1}(s,1) - single products
             - binom single.

    Expansion conventions for the spots the displays leave symbolic: a
    trailing-one atom such as zeta(s+t-1, 1) takes its T = 0 harmonic value,
    and form 2's shifted zeta_{t-1}(s,1) goes through the shuffle antipode
    (reversal modulo products).  Both choices match the word lift in value;
    they are the ones under which solving form 2 against the even dihedral
    identity reproduces the printed Galois descent atom for atom.
    """
    if s < 1 or t < 1:
        raise ValueError("doubling needs s, t >= 1")
    if form not in (1, 2):
        raise ValueError("form must be 1 or 2")
    n = s + t

    def reg(*parts: int) -> LinComb:
        return _stuffle_reg_cached(Z(*parts), Fraction(0))

    halved = LinComb.zero()
    for i in range(1, s + 1):
        halved = halved + Fraction(binom(n - i - 1, t - 1), 2 ** (n - i - 1)) \
            * reg(i, n - i)
    for i in range(1, t + 1):
        halved = halved + Fraction(binom(n - i - 1, s - 1), 2 ** (n - i - 1)) \
            * reg(n - i, i)
    last = Fraction(binom(n - 1, s))
    if form == 1:
        lhs = reg(s, t) + LinComb.atom(Z(-s, -t))
        rhs = halved - Fraction(last, 2 ** (n - 1)) * _z(n)
        for i in range(1, t + 1):
            coeff = Fraction(binom(n - i - 1, s - 1))
            if coeff:
                rhs = rhs - coeff * (reg(n - i, i) + reg(-(n - i), i))
        return IdentityInstance("gen-doubling", (s, t, 1), lhs, rhs)
    sign = Fraction((-1) ** t)
    lhs = LinComb.atom(Z(-s, -t)) + sign * shuffle_reg_index(Z(1, -s, l=t - 1))
    rhs = halved - reg(s, t) + sign * shuffle_antipode_reverse(Z(s, 1, l=t - 1))
    rhs = rhs - last * _z(n)
    for i in range(1, t + 1):
        coeff = Fraction(binom(n - i - 1, s - 1))
        if coeff:
            rhs = rhs - coeff * _zbar(n - i) * _z(i)
    return IdentityInstance("gen-doubling", (s, t, 2), lhs, rhs)


def doubling_transform_residue(s: int, t: int) -> LinComb:
    """Exact witness that the two doubling forms are the same identity.

    Form 2 arises from form 1 by stuffle-flipping each zeta(n-i bar, i) into
    the product zeta(n-i bar) zeta(i) and rewriting the surviving
    binomial-weighted double sums as the shifted objects zeta_{t-1}(s,1) and
    zeta_{t-1}(1, s bar).  Replaying those two moves on the difference of the
    residuals must leave nothing; the returned combination is zero exactly
    when it does.
    """
    f1 = generalized_doubling(s, t, form=1)
    f2 = generalized_doubling(s, t, form=2)
    out = (f1.lhs - f1.rhs) - (f2.lhs - f2.rhs)
    n = s + t
    sign = Fraction((-1) ** t)
    shifted = Z(s, 1, l=t - 1)
    out = out - sign * (shuffle_antipode_reverse(shifted)
                        - distribute_lead_zeros(shifted))
    for i in range(2, t + 1):
        coeff = Fraction(binom(n - i - 1, s - 1))
        if not coeff:
            continue
        flip = LinComb.zero()
        for (idx,), c in stuffle(Z(-(n - i)), Z(i)).items():
            if idx.convergent:
                flip = flip + c * LinComb.atom(idx)
            else:
                flip = flip + c * _stuffle_reg_cached(idx, Fraction(0))
        out = out - coeff * (flip - _zbar(n - i) * _z(i))
    return normalize_lincomb(out)


def galois_descent_evbar(k: int, l: int) -> IdentityInstance:
    """Descent of the double-bar even double to classical depth 2:

    zeta(2l bar, 2k bar) = sum 2^(-i)[C(i-1,2k-1) zeta(2k+2l-i, i)
        + C(i-1,2l-1) zeta(i, 2k+2l-i)] - zeta(2l, 2k)
        + sum (-2)^(-r) C(r-1,2k-1) zeta(r) zeta(2k+2l-r)
        - 2^(-2k-2l)[2 C(2k+2l-2,2k-1) + C(2k+2l-1,2k-1)] zeta(2k+2l).
    """
    if k < 1 or l < 1:
        raise ValueError("descent needs k, l >= 1")
    n = 2 * k + 2 * l
    lhs = LinComb.atom(Z(-2 * l, -2 * k))
    rhs = -LinComb.atom(Z(2 * l, 2 * k))
    for i in range(2, n - 1):
        ci = Fraction(binom(i - 1, 2 * k - 1), 2 ** i)
        if ci:
            rhs = rhs + ci * LinComb.atom(Z(n - i, i))
        cj = Fraction(binom(i - 1, 2 * l - 1), 2 ** i)
        if cj:
            rhs = rhs + cj * LinComb.atom(Z(i, n - i))
    for r in range(2, n - 1):
        coeff = Fraction(binom(r - 1, 2 * k - 1), (-2) ** r)
        if coeff:
            rhs = rhs + coeff * _z(r) * _z(n - r)
    rhs = rhs - Fraction(2 * binom(n - 2, 2 * k - 1) + binom(n - 1, 2 * k - 1), 2 ** n) * _z(n)
    return IdentityInstance("galois-evbar", (k, l), lhs, rhs)


# ---------------------------------------------------------------------------
# the closed forms for the ({2}^a, 4, {2}^b) families
# ---------------------------------------------------------------------------

def _i_pi_pow(m: int) -> LinComb:
    """(i pi)^(2m) as an exact LinComb."""
    return Fraction((-1) ** m) * pi_power(2 * m)


def _i_pi_half_pow(m: int) -> LinComb:
    """(i pi / 2)^(2m) as an exact LinComb."""
    return Fraction((-1) ** m, 4 ** m) * pi_power(2 * m)


def _euler_quad(i: int, j: int, r: int, s: int) -> Fraction:
    """(-1)^r E_{i+r} E_{j+s} / (i! j! r! s!) with E the Euler numbers."""
    ei, ej = euler_number(i + r), euler_number(j + s)
    if not ei or not ej:
        return Fraction(0)
    return Fraction((-1) ** r * ei * ej,
                    factorial(i) * factorial(j) * factorial(r) * factorial(s))


def _zetastar_2242_rhs(a: int, b: int) -> LinComb:
    """Right-hand side of the full closed form for zeta-star({2}^a,4,{2}^b)."""
    out = LinComb.zero()
    # (1) 8 zeta(2q bar) zeta(2b+2, 2p+2)
    for p in range(a + 1):
        q = a - p
        out = out + 8 * _zbar(2 * q) * LinComb.atom(Z(2 * b + 2, 2 * p + 2))
    # (2) -8 [a>0] zeta(2s bar) zeta(2a+1, 2r+3)
    if a > 0:
        for r in range(b + 1):
            s = b - r
            out = out - 8 * _zbar(2 * s) * LinComb.atom(Z(2 * a + 1, 2 * r + 3))
    # (3) -2 (2^-i C(i+1,2b+1) + 2^-j C(j+1,2a+1-2u)) zeta(2u bar) zeta(i+2,j+2)
    for u in range(a + b + 1):
        for i in range(2 * a + 2 * b - 2 * u + 1):
            j = 2 * a + 2 * b - 2 * u - i
            coeff = Fraction(binom(i + 1, 2 * b + 1), 2 ** i) \
                + Fraction(binom(j + 1, 2 * a + 1 - 2 * u), 2 ** j)
            if coeff:
                out = out - 2 * coeff * _zbar(2 * u) * LinComb.atom(Z(i + 2, j + 2))
    # (4) (2^(-2q-2s) zeta(2q+2s+3) - 8 zeta(2q+2s+3 bar)) C(2+2q+2s, 1+2s)
    #     zeta(2r+3) zeta(2p bar)
    for p in range(a + 1):
        q = a - p
        for r in range(b):
            s = b - 1 - r
            c = Fraction(binom(2 + 2 * q + 2 * s, 1 + 2 * s))
            if not c:
                continue
            mid = Fraction(1, 4 ** (q + s)) * _z(2 * q + 2 * s + 3) - 8 * _zbar(2 * q + 2 * s + 3)
            out = out + c * mid * _z(2 * r + 3) * _zbar(2 * p)
    # (5) 8 C(2w+2b+2, 2b+1) zeta(2u+3) zeta(2v bar) zeta(2b+2w+3 bar)
    for u in range(a):
        for v in range(a - u):
            w = a - 1 - u - v
            out = out + 8 * binom(2 * w + 2 * b + 2, 2 * b + 1) \
                * _z(2 * u + 3) * _zbar(2 * v) * _zbar(2 * b + 2 * w + 3)
    # (6) -8 zeta(2p+3) zeta(2q+3) zeta(2b+2 bar)
    for p in range(a - 1):
        q = a - 2 - p
        out = out - 8 * _z(2 * p + 3) * _z(2 * q + 3) * _zbar(2 * b + 2)
    # (7) 8 zeta(2a+1) zeta(2r+3) zeta(2s bar)
    for r in range(b + 1):
        s = b - r
        out = out + 8 * _z(2 * a + 1) * _z(2 * r + 3) * _zbar(2 * s)
    # (8) 4 [a=0] zeta(2u+3) zeta(2v+3) zeta(2w bar)
    if a == 0:
        for u in range(b):
            for v in range(b - u):
                w = b - 1 - u - v
                out = out + 4 * _z(2 * u + 3) * _z(2 * v + 3) * _zbar(2 * w)
    # (9) 8 C(2q+2s, 2s) zeta(2r bar) zeta(2p+3) zeta(2q+2s+1)
    for p in range(a):
        q = a - 1 - p
        for r in range(b + 2):
            s = b + 1 - r
            out = out + 8 * binom(2 * q + 2 * s, 2 * s) \
                * _zbar(2 * r) * _z(2 * p + 3) * _z(2 * q + 2 * s + 1)
    # (10) -8 C(2a+2v, 2v) zeta(2u bar) zeta(2w+3) zeta(2a+2v+1)
    for u in range(b + 1):
        for v in range(b + 1 - u):
            w = b - u - v
            out = out - 8 * binom(2 * a + 2 * v, 2 * v) \
                * _zbar(2 * u) * _z(2 * w + 3) * _z(2 * a + 2 * v + 1)
    # (11) -3 zeta(2) sum over Euler pairs, (i pi / 2)^(2a+2b+2)
    acc = Fraction(0)
    for i in range(2 * a + 1):
        j = 2 * a - i
        for r in range(2 * b + 3):
            s = 2 * b + 2 - r
            acc += _euler_quad(i, j, r, s)
    if acc:
        out = out - 3 * acc * zeta_even(2) * _i_pi_half_pow(a + b + 1)
    # (12) +3 zeta(2) Euler pairs with a zeta(2t+2) tail
    for t in range(b + 1):
        acc = Fraction(0)
        for i in range(2 * a + 1):
            j = 2 * a - i
            for r in range(2 * b - 2 * t + 1):
                s = 2 * b - 2 * t - r
                acc += _euler_quad(i, j, r, s)
        if acc:
            out = out + 3 * acc * zeta_even(2) * _i_pi_half_pow(a + b - t) * zeta_even(2 * t + 2)
    # (13) 2 zeta(w bar)
    out = out + 2 * _zbar(2 * a + 2 * b + 4)
    # (14) 4 2^(-2p-2b) C(2p+2b, 2b+1) zeta(2p+2b+2) zeta(2q bar)
    for p in range(a + 2):
        q = a + 1 - p
        c = Fraction(4 * binom(2 * p + 2 * b, 2 * b + 1), 4 ** (p + b))
        if c:
            out = out + c * _z(2 * p + 2 * b + 2) * _zbar(2 * q)
    # (15) 8 C(2u+2b+1, 2b+1) zeta(2w bar) zeta(2v+2) zeta(2u+2b+2 bar)
    for u in range(a + 1):
        for v in range(a + 1 - u):
            w = a - u - v
            out = out + 8 * binom(2 * u + 2 * b + 1, 2 * b + 1) \
                * _zbar(2 * w) * _z(2 * v + 2) * _zbar(2 * u + 2 * b + 2)
    # (16) 4 (C(2a+2r+1, 2a+1) - C(2a+2r+1, 2r+1)) zeta(2a+2r+2) zeta(2s bar)
    for r in range(b + 2):
        s = b + 1 - r
        c = Fraction(4 * (binom(2 * a + 2 * r + 1, 2 * a + 1) - binom(2 * a + 2 * r + 1, 2 * r + 1)))
        if c:
            out = out + c * _z(2 * a + 2 * r + 2) * _zbar(2 * s)
    # (17) -4 zeta(2a+2r+2) zeta(2s bar)
    for r in range(b + 2):
        s = b + 1 - r
        out = out - 4 * _z(2 * a + 2 * r + 2) * _zbar(2 * s)
    # (18) -4 [a=0] zeta(2u+2) zeta(2v+2) zeta(2w bar)
    if a == 0:
        for u in range(b + 1):
            for v in range(b + 1 - u):
                w = b - u - v
                out = out - 4 * _z(2 * u + 2) * _z(2 * v + 2) * _zbar(2 * w)
    # (19) 8 [a=0] zeta(2r+2) zeta(2s bar)
    if a == 0:
        for r in range(b + 2):
            s = b + 1 - r
            out = out + 8 * _z(2 * r + 2) * _zbar(2 * s)
    # (20) -8 [a=0] zeta(2) zeta(2b+2 bar)
    if a == 0:
        out = out - 8 * zeta_even(2) * _zbar(2 * b + 2)
    return out


def zetastar_2242_closed(a: int, b: int) -> IdentityInstance:
    """Full closed form of zeta-star({2}^a, 4, {2}^b) in depth <= 2 constants."""
    return IdentityInstance("zetastar-2242", (a, b),
                            _star_2242_expanded(a, b), _zetastar_2242_rhs(a, b))


def _zeta_2242_rhs(a: int, b: int) -> LinComb:
    """Right-hand side of the closed form for zeta({2}^a, 4, {2}^b),
    including the overall (-1)^(a+b) prefactor."""
    out = LinComb.zero()
    # (1) -4 zeta(2p+2, 2b+2) (i pi)^(2q) / (2q+1)!
    for p in range(a + 1):
        q = a - p
        out = out - 4 * LinComb.atom(Z(2 * p + 2, 2 * b + 2)) \
            * _i_pi_pow(q) / factorial(2 * q + 1)
    # (2) +4 zeta(2r+3, 2a+3) (i pi)^(2s) / (2s+1)!
    for r in range(b):
        s = b - 1 - r
        out = out + 4 * LinComb.atom(Z(2 * r + 3, 2 * a + 3)) \
            * _i_pi_pow(s) / factorial(2 * s + 1)
    # (3) (2^-i C(i+1, 2a-2u+1) + 2^-j C(j+1, 2b+1)) zeta(i+2, j+2) (i pi)^(2u)/(2u+1)!
    for u in range(a + b + 1):
        for i in range(2 * a + 2 * b - 2 * u + 1):
            j = 2 * a + 2 * b - 2 * u - i
            coeff = Fraction(binom(i + 1, 2 * a - 2 * u + 1), 2 ** i) \
                + Fraction(binom(j + 1, 2 * b + 1), 2 ** j)
            if coeff:
                out = out + coeff * LinComb.atom(Z(i + 2, j + 2)) \
                    * _i_pi_pow(u) / factorial(2 * u + 1)
    # (4) 4 C(2w+2b+2, 2b+1) (zeta(2b+2w+3 bar) - 2^-(2b+2w+3) zeta(2b+2w+3))
    #     zeta(2v+3) (i pi)^(2u) / (2u+1)!
    for u in range(a):
        for v in range(a - u):
            w = a - 1 - u - v
            m = 2 * b + 2 * w + 3
            c = Fraction(4 * binom(2 * w + 2 * b + 2, 2 * b + 1))
            if not c:
                continue
            out = out + c * (_zbar(m) - Fraction(1, 2 ** m) * _z(m)) \
                * _z(2 * v + 3) * _i_pi_pow(u) / factorial(2 * u + 1)
    # (5) -4 C(2p+2s, 2s-1) zeta(2r+3) zeta(2s+2p+1 bar) (i pi)^(2q) / (2q+1)!
    for p in range(a + 1):
        q = a - p
        for r in range(b + 1):
            s = b - r
            c = Fraction(4 * binom(2 * p + 2 * s, 2 * s - 1))
            if c:
                out = out - c * _z(2 * r + 3) * _zbar(2 * s + 2 * p + 1) \
                    * _i_pi_pow(q) / factorial(2 * q + 1)
    # (6) -4 C(2a+2v+2, 2v) zeta(2w+3) zeta(2a+2v+3) (i pi)^(2u) / (2u+1)!
    for u in range(b):
        for v in range(b - u):
            w = b - 1 - u - v
            out = out - 4 * binom(2 * a + 2 * v + 2, 2 * v) * _z(2 * w + 3) \
                * _z(2 * a + 2 * v + 3) * _i_pi_pow(u) / factorial(2 * u + 1)
    # (7) +4 C(2q+2r, 2r) zeta(2p+3) zeta(2q+2r+1) (i pi)^(2s) / (2s+1)!
    for p in range(a + 1):
        q = a - p
        for r in range(b + 1):
            s = b - r
            out = out + 4 * binom(2 * q + 2 * r, 2 * r) * _z(2 * p + 3) \
                * _z(2 * q + 2 * r + 1) * _i_pi_pow(s) / factorial(2 * s + 1)
    # (8) -2 zeta(2p+3) zeta(2q+3) (i pi)^(2b) / (2b+1)!
    for p in range(a):
        q = a - 1 - p
        out = out - 2 * _z(2 * p + 3) * _z(2 * q + 3) * _i_pi_pow(b) / factorial(2 * b + 1)
    # (9) -4 zeta(2a+3) zeta(2r+3) (i pi)^(2s) / (2s+1)!
    for r in range(b):
        s = b - 1 - r
        out = out - 4 * _z(2 * a + 3) * _z(2 * r + 3) * _i_pi_pow(s) / factorial(2 * s + 1)
    # (10) -3 zeta(2) Euler quadruple with two split factors, top pi power
    acc = Fraction(0)
    for i in range(2 * a + 3):
        for j in range(2 * a + 3 - i):
            k2 = 2 * a + 2 - i - j
            if k2 % 2:
                continue
            k = k2 // 2
            for p in range(2 * b + 1):
                for q in range(2 * b + 1 - p):
                    r2 = 2 * b - p - q
                    if r2 % 2:
                        continue
                    r = r2 // 2
                    e = _euler_quad(i, j, p, q)
                    if e:
                        acc += e * Fraction(2 ** (2 * k + 2 * r),
                                            factorial(2 * k + 1) * factorial(2 * r + 1))
    if acc:
        out = out - 3 * acc * zeta_even(2) * _i_pi_half_pow(a + b + 1)
    # (11) +3 zeta(2) Euler quadruple with a zeta(2l+2) tail
    for lam in range(a + 1):
        acc = Fraction(0)
        for i in range(2 * a - 2 * lam + 1):
            for j in range(2 * a - 2 * lam + 1 - i):
                k2 = 2 * a - 2 * lam - i - j
                if k2 % 2:
                    continue
                k = k2 // 2
                for p in range(2 * b + 1):
                    for q in range(2 * b + 1 - p):
                        r2 = 2 * b - p - q
                        if r2 % 2:
                            continue
                        r = r2 // 2
                        e = _euler_quad(i, j, p, q)
                        if e:
                            acc += e * Fraction(2 ** (2 * k + 2 * r),
                                                factorial(2 * k + 1) * factorial(2 * r + 1))
        if acc:
            out = out + 3 * acc * zeta_even(2) * _i_pi_half_pow(a + b - lam) \
                * zeta_even(2 * lam + 2)
    # (12) (i pi)^(2a+2b+4) / (2a+2b+5)!
    out = out + _i_pi_pow(a + b + 2) / factorial(2 * a + 2 * b + 5)
    # (13) 2 zeta(2b+2) (i pi)^(2a+2) / (2a+3)!
    out = out + 2 * zeta_even(2 * b + 2) * _i_pi_pow(a + 1) / factorial(2 * a + 3)
    # (14) -4 zeta(2a+4) (i pi)^(2b) / (2b+1)!
    out = out - 4 * _z(2 * a + 4) * _i_pi_pow(b) / factorial(2 * b + 1)
    # (15) -2^(1-2p-2b) C(2p+2b, 2b+1) zeta(2p+2b+2) (i pi)^(2q) / (2q+1)!
    for p in range(a + 2):
        q = a + 1 - p
        c = Fraction(2 * binom(2 * p + 2 * b, 2 * b + 1), 4 ** (p + b))
        if c:
            out = out - c * _z(2 * p + 2 * b + 2) * _i_pi_pow(q) / factorial(2 * q + 1)
    # (16) -4 C(2p+2r+1, 2p+1) zeta(2p+2r+2 bar) zeta(2s+2) (i pi)^(2q) / (2q+1)!
    for p in range(a + 1):
        q = a - p
        for r in range(b + 1):
            s = b - r
            out = out - 4 * binom(2 * p + 2 * r + 1, 2 * p + 1) * _zbar(2 * p + 2 * r + 2) \
                * _z(2 * s + 2) * _i_pi_pow(q) / factorial(2 * q + 1)
    # (17) +2 zeta(2a+2r+4)(C(2a+2r+3, 2a+3) - C(2a+2r+3, 2r+1)) (i pi)^(2s)/(2s+1)!
    #      (the single must carry weight 2a+2r+4 for the term to be homogeneous)
    for r in range(b + 1):
        s = b - r
        c = Fraction(2 * (binom(2 * a + 2 * r + 3, 2 * a + 3) - binom(2 * a + 2 * r + 3, 2 * r + 1)))
        if c:
            out = out + c * _z(2 * a + 2 * r + 4) * _i_pi_pow(s) / factorial(2 * s + 1)
    # (18) +2 zeta(2a+2r+4) (i pi)^(2s) / (2s+1)!
    for r in range(b + 1):
        s = b - r
        out = out + 2 * _z(2 * a + 2 * r + 4) * _i_pi_pow(s) / factorial(2 * s + 1)
    # (19) +2 zeta(2p+2) zeta(2q+2) (i pi)^(2b) / (2b+1)!
    for p in range(a + 1):
        q = a - p
        out = out + 2 * _z(2 * p + 2) * _z(2 * q + 2) * _i_pi_pow(b) / factorial(2 * b + 1)
    return Fraction((-1) ** (a + b)) * out


def zeta_2242_closed(a: int, b: int) -> IdentityInstance:
    """Full closed form of zeta({2}^a, 4, {2}^b) in depth <= 2 constants."""
    return IdentityInstance("zeta-2242", (a, b),
                            LinComb.atom(_index_2242(a, b)), _zeta_2242_rhs(a, b))


def zeta_2242_from_star_transform(a: int, b: int) -> LinComb:
    """Independent route to the same closed form: push the star closed form
    through the antipode flip, i.e. sum (-1)^(m+n) rhs-star(m, n)
    zeta({2}^(a-n)) zeta({2}^(b-m))."""
    out = LinComb.zero()
    for n in range(a + 1):
        for m in range(b + 1):
            out = out + Fraction((-1) ** (m + n)) * _zetastar_2242_rhs(m, n) \
                * zeta_two_blocks(a - n) * zeta_two_blocks(b - m)
    return out


# ---------------------------------------------------------------------------
# the modulo-products skeleton and its telescoping sum
# ---------------------------------------------------------------------------

def _z2242_families(a: int, b: int) -> Tuple[LinComb, LinComb, LinComb]:
    """The three term families of the modulo-products reduction of
    zeta({2}^a,4,{2}^b): (even-even, odd-odd, binomial sum), each carrying
    the (-1)^(a+b) prefactor."""
    sign = Fraction((-1) ** (a + b))
    ee = -4 * sign * LinComb.atom(Z(2 * a + 2, 2 * b + 2))
    mid = 4 * sign * LinComb.atom(Z(2 * b + 1, 2 * a + 3))
    bin_sum = LinComb.zero()
    for i in range(2 * a + 2 * b + 1):
        j = 2 * a + 2 * b - i
        coeff = Fraction(binom(i + 1, 2 * a + 1), 2 ** i) \
            + Fraction(binom(j + 1, 2 * b + 1), 2 ** j)
        if coeff:
            bin_sum = bin_sum + sign * coeff * LinComb.atom(Z(i + 2, j + 2))
    return ee, mid, bin_sum


def z2242_mod_products(a: int, b: int) -> LinComb:
    """Image of zeta({2}^a, 4, {2}^b) in weight-graded double zetas modulo
    products: (-1)^(a+b) [ -4 zeta(2a+2,2b+2) + 4 zeta(2b+1,2a+3)
    + sum_{i+j=2a+2b} (2^-i C(i+1,2a+1) + 2^-j C(j+1,2b+1)) zeta(i+2,j+2) ]."""
    if a < 0 or b < 0:
        raise ValueError("block lengths must be nonnegative")
    ee, mid, bin_sum = _z2242_families(a, b)
    return ee + mid + bin_sum


@dataclass(frozen=True)
class TelescopeCertificate:
    """Exact witness that the symmetric-range sum of modulo-products vectors
    collapses to a single double zeta.

    ``total`` is sum_{i=a}^{n-a} z2242_mod_products(i, n-i); ``survivor`` is
    4(-1)^n zeta(2a+1, 2n-2a+3); ``remainder`` = total - survivor consists of
    flip-symmetric and diagonal terms only, so it dies in the quotient by
    products -- ``holds`` records that flip_depth2(remainder) vanished.
    """

    a: int
    n: int
    total: LinComb
    survivor: LinComb
    remainder: LinComb
    holds: bool


def double_zeta_telescope(a: int, n: int) -> TelescopeCertificate:
    """Certify sum_{i=a}^{n-a} z2242_mod_products(i, n-i) =
    4(-1)^n zeta(2a+1, 2n-2a+3) modulo products, by exact rational
    cancellation under the depth-2 flip relations."""
    if not (0 <= 2 * a <= n):
        raise ValueError("need 0 <= 2a <= n")
    total = LinComb.zero()
    for i in range(a, n - a + 1):
        total = total + z2242_mod_products(i, n - i)
    survivor = Fraction(4 * (-1) ** n) * LinComb.atom(Z(2 * a + 1, 2 * n - 2 * a + 3))
    remainder = total - survivor
    holds = not flip_depth2(remainder)
    return TelescopeCertificate(a, n, total, survivor, remainder, holds)


# ---------------------------------------------------------------------------
# multiple t values in depth 2
# ---------------------------------------------------------------------------

def t_from_alternating(parts: Sequence[int]) -> LinComb:
    """Expand t(k_1,...,k_d) as 2^(-d) sum over sign patterns with the sign
    (-1)^(number of alternating slots), i.e. odd-denominator restriction via
    (1 - (-1)^n)/2 factors in every summation variable."""
    ks = tuple(int(k) for k in parts)
    if not ks or any(k < 1 for k in ks):
        raise ValueError("t needs positive arguments")
    if ks[-1] == 1:
        raise ValueError("divergent t argument (outer weight 1)")
    d = len(ks)
    out = LinComb.zero()
    for eps in itertools.product((1, -1), repeat=d):
        bars = sum(1 for e in eps if e == -1)
        out = out + Fraction((-1) ** bars, 2 ** d) * LinComb.atom(Z(*[k * e for k, e in zip(ks, eps)]))
    return out


def distribution_depth2(a: int, b: int) -> LinComb:
    """The depth-2 distribution residual
    zeta(a,b) + zeta(a bar, b) + zeta(a, b bar) + zeta(a bar, b bar)
    - 2^(2-a-b) zeta(a,b); identically zero as a real number."""
    if b < 2 or a < 1:
        raise ValueError("need a convergent unbarred tail")
    out = LinComb.atom(Z(a, b)) + LinComb.atom(Z(-a, b)) \
        + LinComb.atom(Z(a, -b)) + LinComb.atom(Z(-a, -b))
    return out - Fraction(4, 2 ** (a + b)) * LinComb.atom(Z(a, b))


def t_expansion_depth2(a: int, b: int) -> IdentityInstance:
    """t(a,b) = 1/2 zeta(a bar, b bar) + 1/2 zeta(a,b) - 2^(-a-b) zeta(a,b);
    an exact consequence of the sign expansion and the distribution relation."""
    if b < 2 or a < 1:
        raise ValueError("need a convergent t argument with unbarred expansion")
    lhs = t_from_alternating((a, b))
    rhs = Fraction(1, 2) * LinComb.atom(Z(-a, -b)) \
        + (Fraction(1, 2) - Fraction(1, 2 ** (a + b))) * LinComb.atom(Z(a, b))
    return IdentityInstance("t-expand", (a, b), lhs, rhs)


def _t_single(n: int) -> LinComb:
    """t(n) = (1 - 2^-n) zeta(n), with even n pushed to the zeta(2) basis."""
    if n < 2:
        raise ValueError("divergent t single")
    factor = 1 - Fraction(1, 2 ** n)
    return factor * (zeta_even(n) if n % 2 == 0 else LinComb.atom(Z(n)))


def t_even_even(k: int, l: int) -> IdentityInstance:
    """t(2l, 2k) through classical double zetas (halved descent binomials)."""
    if k < 1 or l < 1:
        raise ValueError("need k, l >= 1")
    n = 2 * k + 2 * l
    lhs = t_from_alternating((2 * l, 2 * k))
    rhs = -Fraction(1, 2 ** n) * LinComb.atom(Z(2 * l, 2 * k))
    for i in range(2, n - 1):
        ci = Fraction(binom(i - 1, 2 * k - 1), 2 ** (i + 1))
        if ci:
            rhs = rhs + ci * LinComb.atom(Z(n - i, i))
        cj = Fraction(binom(i - 1, 2 * l - 1), 2 ** (i + 1))
        if cj:
            rhs = rhs + cj * LinComb.atom(Z(i, n - i))
    for r in range(2, n - 1):
        coeff = Fraction(binom(r - 1, 2 * k - 1), (-2) ** (r + 1))
        if coeff:
            rhs = rhs - coeff * _z(r) * _z(n - r)
    rhs = rhs - Fraction(2 * binom(n - 2, 2 * k - 1) + binom(n - 1, 2 * k - 1), 2 ** (n + 1)) * _z(n)
    return IdentityInstance("t-even-even", (k, l), lhs, rhs)


def t_odd_even(a: int, b: int) -> IdentityInstance:
    """t(2a+1, 2b) = t(2a+1) t(2b) - 1/2 t(2a+2b+1) - sum_s [C(2a+2b-2s,2a)
    + C(2a+2b-2s,2b-1)] 2^-(2a+2b+1-2s) zeta(2a+2b+1-2s) t(2s)."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    w = 2 * a + 2 * b + 1
    lhs = t_from_alternating((2 * a + 1, 2 * b))
    rhs = _t_single(2 * a + 1) * _t_single(2 * b) - Fraction(1, 2) * _t_single(w)
    for s in range(1, a + b + 1):
        c = Fraction(binom(2 * a + 2 * b - 2 * s, 2 * a) + binom(2 * a + 2 * b - 2 * s, 2 * b - 1),
                     2 ** (w - 2 * s))
        if c and w - 2 * s >= 2:
            rhs = rhs - c * _z(w - 2 * s) * _t_single(2 * s)
    return IdentityInstance("t-odd-even", (a, b), lhs, rhs)


def t_even_odd(a: int, b: int) -> IdentityInstance:
    """t(2a, 2b+1) = -1/2 t(2a+2b+1) + sum_s [C(2a+2b-2s,2b)
    + C(2a+2b-2s,2a-1)] 2^-(2a+2b+1-2s) zeta(2a+2b+1-2s) t(2s)."""
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    w = 2 * a + 2 * b + 1
    lhs = t_from_alternating((2 * a, 2 * b + 1))
    rhs = -Fraction(1, 2) * _t_single(w)
    for s in range(1, a + b + 1):
        c = Fraction(binom(2 * a + 2 * b - 2 * s, 2 * b) + binom(2 * a + 2 * b - 2 * s, 2 * a - 1),
                     2 ** (w - 2 * s))
        if c and w - 2 * s >= 2:
            rhs = rhs + c * _z(w - 2 * s) * _t_single(2 * s)
    return IdentityInstance("t-even-odd", (a, b), lhs, rhs)


def t39_testvector() -> IdentityInstance:
    """The explicit weight-12 vector for t(3,9), including the depth-4 term
    (9/128) zeta(1,1,4,6); a pure numeric acceptance target."""
    z = LinComb.atom
    rhs = (Fraction(9, 128) * z(Z(1, 1, 4, 6))
           + Fraction(1305, 4096) * z(Z(3, 9))
           - Fraction(27, 128) * z(Z(2)) * z(Z(3, 7))
           - Fraction(27, 256) * z(Z(4)) * z(Z(3, 5))
           + Fraction(3131, 2048) * z(Z(9)) * z(Z(3))
           - Fraction(321, 1024) * z(Z(5)) * z(Z(7))
           - Fraction(3, 512) * z(Z(3)) * z(Z(3)) * z(Z(3)) * z(Z(3))
           - Fraction(45, 64) * z(Z(2)) * z(Z(7)) * z(Z(3))
           - Fraction(63, 256) * z(Z(2)) * z(Z(5)) * z(Z(5))
           + Fraction(9, 256) * z(Z(4)) * z(Z(5)) * z(Z(3))
           + Fraction(81, 512) * z(Z(6)) * z(Z(3)) * z(Z(3))
           + Fraction(353139, 5660672) * z(Z(12)))
    return IdentityInstance("t39", (3, 9), t_from_alternating((3, 9)), rhs)
