"""Weight-graded cobracket on iterated-integral words.

``d_r_word`` implements the degree-r component of the word coaction: every
length-r interior window of a word splits off as a bounded left factor
I(a_k; a_{k+1}..a_{k+r}; a_{k+r+1}), the complement staying on the right.
Windows whose two bounding letters agree are dropped.

The left factors that occur in the double-zeta and two-block families all
reduce to depth-one symbols; ``normalize_left_factor`` performs that
reduction (path reversal, scaling by -1, path splitting at 0, and the
lead-zero composition formula for a single nonzero letter).
``verify_family_Dr`` runs the cobracket on a family word, normalizes both
tensor legs, and compares against the family's stated closed form -- an
exact, certificate-style check.  ``verify_lemma_binomial`` and
``verify_mod_products_2242`` are the purely rational binomial checks that
back the two-block evaluation argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .mzvword import (
    LinComb,
    SignedIndex,
    Word,
    index_to_word,
    interp_expand,
    lift_divergent_word,
)
from .identities import linearize_products, zeta_2242_closed

Z = SignedIndex.of

__all__ = [
    "BoundedWord",
    "TensorSum",
    "Certificate",
    "FAMILIES",
    "d_r_word",
    "normalize_left_factor",
    "verify_family_Dr",
    "lemma_binomial_sides",
    "verify_lemma_binomial",
    "mod_products_sides_2242",
    "verify_mod_products_2242",
]


def _comb(n: int, k: int) -> int:
    """Binomial coefficient extended by zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


# ---------------------------------------------------------------------------
# bounded words and tensor sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundedWord:
    """An iterated integral I(lo; letters; hi) with explicit endpoints."""

    lo: int
    letters: Tuple[int, ...]
    hi: int

    def __post_init__(self):
        for a in (self.lo, self.hi):
            if a not in (0, 1, -1):
                raise ValueError(f"endpoint {a!r} not in {{0, +1, -1}}")
        for a in self.letters:
            if a not in (0, 1, -1):
                raise ValueError(f"letter {a!r} not in {{0, +1, -1}}")

    @property
    def weight(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        sym = {0: "0", 1: "1", -1: "m"}
        body = "".join(sym[a] for a in self.letters)
        return f"I({sym[self.lo]};{body};{sym[self.hi]})"

    __repr__ = __str__


@dataclass
class TensorSum:
    """Formal sum of coeff * (left bounded word (x) right word)."""

    terms: List[Tuple[BoundedWord, Word, Fraction]] = field(default_factory=list)

    @classmethod
    def zero(cls) -> "TensorSum":
        return cls([])

    def __add__(self, other: "TensorSum") -> "TensorSum":
        return TensorSum(self.terms + other.terms)

    def __mul__(self, c) -> "TensorSum":
        c = Fraction(c)
        if not c:
            return TensorSum.zero()
        return TensorSum([(l, r, c * v) for l, r, v in self.terms])

    __rmul__ = __mul__

    def collected(self) -> Dict[Tuple[BoundedWord, Tuple[int, ...]], Fraction]:
        """Merge equal (left, right) pairs; drop zero coefficients."""
        out: Dict[Tuple[BoundedWord, Tuple[int, ...]], Fraction] = {}
        for l, r, c in self.terms:
            key = (l, r.letters)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return out

    def grouped(self) -> Dict[SignedIndex, LinComb]:
        """Normalize both tensor legs.

        The right word is rewritten as a combination of convergent indices
        (T = 0 regularization); terms whose right leg vanishes are dropped
        *before* the left leg is touched, so dead windows never demand a
        table entry.  Surviving left factors must reduce to depth-one
        symbols -- anything else raises, loudly.
        """
        out: Dict[SignedIndex, LinComb] = {}
        for bw, rw, c in self.terms:
            right = lift_divergent_word(rw)
            if not right.terms:
                continue
            left = _reduce_left(bw.lo, bw.letters, bw.hi)
            if left is None:
                raise ValueError(f"left factor outside the reduction table: {bw}")
            for mono, lcoef in left.items():
                atom = mono[0]
                cur = out.get(atom, LinComb.zero()) + (c * lcoef) * right
                if cur.terms:
                    out[atom] = cur
                else:
                    out.pop(atom, None)
        return out


def d_r_word(w: Word, r: int) -> TensorSum:
    """Degree-r cobracket component of I(0; w; 1).

    Sums, over every window of r consecutive interior letters, the bounded
    window as left factor tensored with the word that remains after the
    window is deleted (endpoints of the window stay in the right word).
    Windows bounded by two equal letters are dropped.
    """
    n = w.weight
    if not 1 <= r <= n:
        raise ValueError(f"window size r={r} not in 1..{n}")
    ext = (0,) + w.letters + (1,)
    out = TensorSum.zero()
    for k in range(n - r + 1):
        lo, hi = ext[k], ext[k + r + 1]
        if lo == hi:
            continue
        left = BoundedWord(lo, ext[k + 1 : k + r + 1], hi)
        right = Word(w.letters[: k] + w.letters[k + r :])
        out.terms.append((left, right, Fraction(1)))
    return out


# ---------------------------------------------------------------------------
# left-factor reduction
# ---------------------------------------------------------------------------

def _is_two_run(letters: Tuple[int, ...]) -> bool:
    """Matches 0 (1 0)^r with r >= 1, the word of zeta_1({2}^r)."""
    n = len(letters)
    if n < 3 or n % 2 == 0 or letters[0] != 0:
        return False
    return all(letters[i] == 1 for i in range(1, n, 2)) and all(
        letters[i] == 0 for i in range(2, n, 2)
    )


def _reduce_left(lo: int, letters: Tuple[int, ...], hi: int) -> Optional[LinComb]:
    """Value of I(lo; letters; hi) as a combination of depth-one symbols.

    Returns None when the word is outside the supported table.  Reductions
    used, in order: equal endpoints vanish; an all-zero interior is a power
    of logarithms of 0 or +-1, hence zero after regularization (and a
    product in any case); a word with two nonzero endpoints splits along an
    intermediate basepoint 0, products being discarded; reversal moves a
    zero endpoint to the front; scaling by -1 makes the upper endpoint +1;
    finally a single nonzero letter is a shifted single zeta, handled by
    the lead-zero composition formula, and 0(10)^r is 2 zeta(2r+1).
    """
    if lo == hi:
        return LinComb.zero()
    if all(a == 0 for a in letters):
        return LinComb.zero()
    if lo != 0 and hi != 0:
        first = _reduce_left(lo, letters, 0)
        second = _reduce_left(0, letters, hi)
        if first is None or second is None:
            return None
        return first + second
    if hi == 0:
        sub = _reduce_left(0, tuple(reversed(letters)), lo)
        if sub is None:
            return None
        return Fraction((-1) ** len(letters)) * sub
    if hi == -1:
        return _reduce_left(0, tuple(-a for a in letters), 1)
    # now lo == 0, hi == +1
    nonzero = [i for i, a in enumerate(letters) if a]
    if len(nonzero) == 1:
        j = nonzero[0]
        eta, ell = letters[j], j
        n = len(letters)
        if n == 1 and eta == 1:
            return LinComb.zero()  # bare zeta(1), regularized to 0
        coeff = -Fraction((-1) ** ell * _comb(n - 1, ell))
        return LinComb.atom(Z(eta * n), coeff)
    if _is_two_run(letters):
        return LinComb.atom(Z(len(letters)), 2)
    return None


def normalize_left_factor(
    bw: BoundedWord,
) -> Optional[Tuple[Fraction, Optional[SignedIndex]]]:
    """Reduce a bounded word to (coefficient, depth-one index).

    Returns None when the word is outside the reduction table, and
    (0, None) when it vanishes.  The index is a single (possibly
    alternating) zeta symbol of the same weight.
    """
    lc = _reduce_left(bw.lo, bw.letters, bw.hi)
    if lc is None:
        return None
    items = list(lc.items())
    if not items:
        return Fraction(0), None
    if len(items) > 1:
        return None
    mono, coeff = items[0]
    return coeff, mono[0]


# ---------------------------------------------------------------------------
# family certificates
# ---------------------------------------------------------------------------

FAMILIES = (
    "zbar-zbar",
    "odd-odd",
    "general-even",
    "z1-2bbar",
    "z1-odd",
    "z2242",
    "zstar2242",
)


@dataclass
class Certificate:
    """Exact comparison of a cobracket computation with a closed form."""

    family: str
    params: Tuple[int, ...]
    r: int
    lhs: Dict[SignedIndex, LinComb]
    rhs: Dict[SignedIndex, LinComb]
    residual: Dict[SignedIndex, LinComb]

    @property
    def ok(self) -> bool:
        return not self.residual

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        tag = "ok" if self.ok else "FAIL"
        return f"D_{2 * self.r + 1} {self.family}{self.params}: {tag}"


def _dict_sub(
    a: Dict[SignedIndex, LinComb], b: Dict[SignedIndex, LinComb]
) -> Dict[SignedIndex, LinComb]:
    out: Dict[SignedIndex, LinComb] = {}
    for key in set(a) | set(b):
        diff = a.get(key, LinComb.zero()) - b.get(key, LinComb.zero())
        if diff.terms:
            out[key] = diff
    return out


def _single(n: int, eps: int = 1) -> LinComb:
    """zeta(n) or zeta(n bar) as a right leg; zeta(1) is 0."""
    if n == 1 and eps == 1:
        return LinComb.zero()
    return LinComb.atom(Z(eps * n))


def _grouped_of_index(idx: SignedIndex, window: int) -> Dict[SignedIndex, LinComb]:
    """Normalized cobracket terms of zeta(idx) = (-1)^depth I(word)."""
    sign, w = index_to_word(idx)
    out = d_r_word(w, window).grouped()
    if sign == 1:
        return out
    return {k: -v for k, v in out.items()}


def _idx_222(n: int) -> SignedIndex:
    return Z(*([2] * n))


def _idx_2242(a: int, b: int) -> SignedIndex:
    return Z(*([2] * a + [4] + [2] * b))


def _idx_223(a: int, b: int) -> SignedIndex:
    return Z(*([2] * a + [3] + [2] * b))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _sides_zbar_zbar(a: int, b: int, r: int):
    _require(a >= 1 and b >= 1, "zbar-zbar needs a, b >= 1")
    _require(1 <= r <= a + b - 1, f"r={r} not in 1..{a + b - 1}")
    lhs = _grouped_of_index(Z(-2 * a, -2 * b), 2 * r + 1)
    coeff = Fraction(_comb(2 * r, 2 * a - 1) - _comb(2 * r, 2 * b - 1))
    right = coeff * _single(2 * a + 2 * b - 2 * r - 1)
    rhs = {Z(-(2 * r + 1)): right} if right.terms else {}
    return lhs, rhs


def _sides_odd_odd(a: int, b: int, r: int):
    _require(a >= 0 and b >= 1, "odd-odd needs a >= 0, b >= 1")
    _require(1 <= r <= a + b, f"r={r} not in 1..{a + b}")
    lhs = _grouped_of_index(Z(2 * a + 1, 2 * b + 1), 2 * r + 1)
    coeff = Fraction(
        (1 if a == r else 0) - _comb(2 * r, 2 * a) + _comb(2 * r, 2 * b)
    )
    right = coeff * _single(2 * a + 2 * b + 1 - 2 * r)
    rhs = {Z(2 * r + 1): right} if right.terms else {}
    return lhs, rhs


def _sides_general_even(p: int, q: int, r: int):
    _require(p >= 1 and q >= 2, "general-even needs p >= 1, q >= 2")
    _require((p + q) % 2 == 0, "general-even needs even weight")
    _require(1 <= 2 * r + 1 <= p + q - 1, f"window 2r+1={2 * r + 1} too large")
    lhs = _grouped_of_index(Z(p, q), 2 * r + 1)
    coeff = Fraction(
        (1 if 2 * r + 1 == p else 0)
        + (-1) ** p * _comb(2 * r, p - 1)
        - (-1) ** q * _comb(2 * r, q - 1)
    )
    right = coeff * _single(p + q - 2 * r - 1)
    rhs = {Z(2 * r + 1): right} if right.terms else {}
    return lhs, rhs


def _sides_z1_2bbar(a: int, b: int, r: int):
    _require(a >= 0 and b >= 0, "z1-2bbar needs a, b >= 0")
    _require(1 <= r <= a + b + 1, f"r={r} not in 1..{a + b + 1}")
    idx = SignedIndex(((1, 1), (2 * b + 2, -1)), lead_zeros=2 * a + 1)
    lhs = _grouped_of_index(idx, 2 * r + 1)
    m = 2 * a + 2 * b + 2 - 2 * r
    coeff = Fraction(
        -(_comb(m, 2 * b + 1) if r <= a else 0)
        + (_comb(m, 2 * a + 1) if r <= b else 0)
    )
    right = coeff * _single(2 * a + 2 * b + 3 - 2 * r, eps=-1)
    rhs = {Z(2 * r + 1): right} if right.terms else {}
    return lhs, rhs


def _sides_z1_odd(a: int, b: int, r: int):
    _require(a >= 0 and b >= 0, "z1-odd needs a, b >= 0")
    _require(1 <= r <= a + b + 1, f"r={r} not in 1..{a + b + 1}")
    idx = SignedIndex(((1, 1), (2 * a + 1, 1)), lead_zeros=2 * b + 2)
    lhs = _grouped_of_index(idx, 2 * r + 1)
    m = 2 * a + 2 * b + 2 - 2 * r
    coeff = Fraction(
        (_comb(m, 2 * a) if r <= b + 1 else 0)
        - (_comb(m, 2 * a - 2 * r) if r <= a - 1 else 0)
    )
    right = coeff * _single(2 * a + 2 * b + 3 - 2 * r)
    rhs = {Z(2 * r + 1): right} if right.terms else {}
    return lhs, rhs


def _sides_z2242(a: int, b: int, r: int):
    _require(a >= 0 and b >= 0, "z2242 needs a, b >= 0")
    _require(1 <= r <= a + b + 1, f"r={r} not in 1..{a + b + 1}")
    lhs = _grouped_of_index(_idx_2242(a, b), 2 * r + 1)
    # zeta_1({2}^r) = 2 (-1)^r zeta(2r+1) on the left leg
    right = LinComb.zero()
    if r <= a:
        right = right - LinComb.atom(_idx_223(a - r, b))
    if r <= b:
        right = right + LinComb.atom(_idx_223(a, b - r))
    right = Fraction(2 * (-1) ** r) * right
    rhs = {Z(2 * r + 1): right} if right.terms else {}
    return lhs, rhs


def _sides_zstar2242(a: int, b: int, r: int):
    _require(a >= 0 and b >= 0, "zstar2242 needs a, b >= 0")
    _require(1 <= r <= a + b + 1, f"r={r} not in 1..{a + b + 1}")
    # The star value carries its cobracket through the antipode flip:
    # the quasi-shuffle blocks zeta-star({2}^k) are annihilated, so
    # D zeta-star({2}^a,4,{2}^b)
    #   = sum (-1)^(m+n) [D zeta({2}^m,4,{2}^n)] (1 (x) star-blocks).
    lhs: Dict[SignedIndex, LinComb] = {}
    for n in range(a + 1):
        for m in range(b + 1):
            if 2 * r + 1 > 2 * m + 2 * n + 4:
                continue  # window wider than the factor: zero component
            blocks = interp_expand(_idx_222(a - n), 1) * interp_expand(
                _idx_222(b - m), 1
            )
            sign = Fraction((-1) ** (m + n))
            for key, val in _grouped_of_index(_idx_2242(m, n), 2 * r + 1).items():
                cur = lhs.get(key, LinComb.zero()) + sign * (val * blocks)
                if cur.terms:
                    lhs[key] = cur
                else:
                    lhs.pop(key, None)
    lhs = {k: linearize_products(v) for k, v in lhs.items()}
    lhs = {k: v for k, v in lhs.items() if v.terms}
    right = LinComb.zero()
    if r <= a:
        right = right + interp_expand(_idx_223(a - r, b), 1)
    if r <= b:
        right = right - interp_expand(_idx_223(a, b - r), 1)
    right = 2 * right
    rhs = {Z(2 * r + 1): right} if right.terms else {}
    return lhs, rhs


_FAMILY_SIDES = {
    "zbar-zbar": _sides_zbar_zbar,
    "odd-odd": _sides_odd_odd,
    "general-even": _sides_general_even,
    "z1-2bbar": _sides_z1_2bbar,
    "z1-odd": _sides_z1_odd,
    "z2242": _sides_z2242,
    "zstar2242": _sides_zstar2242,
}


def verify_family_Dr(family: str, params: Tuple[int, int], r: int) -> Certificate:
    """Check one family's D_{2r+1} closed form, exactly.

    Computes the cobracket window sum on the family word, reduces left legs
    to depth-one symbols and right legs to convergent indices, and returns
    a certificate holding both sides and their difference.
    """
    if family not in _FAMILY_SIDES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    x, y = params
    lhs, rhs = _FAMILY_SIDES[family](int(x), int(y), int(r))
    return Certificate(family, (int(x), int(y)), int(r), lhs, rhs, _dict_sub(lhs, rhs))


# ---------------------------------------------------------------------------
# rational binomial checks
# ---------------------------------------------------------------------------

def lemma_binomial_sides(
    k: int, l: int, r: int
) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """The four sides of the paired binomial-sum identities.

    First pair:  sum_{i=0}^{2k-2} (-2)^(-i) C(i+2l-1, 2l-1) C(2r, i+2l-1)
                 vs  2^(2l-2r-1) C(2r, 2l-1).
    Second pair: sum_{i=0}^{2l-2} (-2)^(-i-2k) C(i+2k-1, 2k-1) C(2r, 2l-i-1)
                 vs the same sum with k and l exchanged.
    """
    lhs1 = sum(
        (Fraction(-2) ** -i) * _comb(i + 2 * l - 1, 2 * l - 1) * _comb(2 * r, i + 2 * l - 1)
        for i in range(2 * k - 1)
    )
    rhs1 = Fraction(2) ** (2 * l - 2 * r - 1) * _comb(2 * r, 2 * l - 1)
    lhs2 = sum(
        (Fraction(-2) ** (-i - 2 * k))
        * _comb(i + 2 * k - 1, 2 * k - 1)
        * _comb(2 * r, 2 * l - i - 1)
        for i in range(2 * l - 1)
    )
    rhs2 = sum(
        (Fraction(-2) ** (-i - 2 * l))
        * _comb(i + 2 * l - 1, 2 * l - 1)
        * _comb(2 * r, 2 * k - i - 1)
        for i in range(2 * k - 1)
    )
    return Fraction(lhs1), Fraction(rhs1), Fraction(lhs2), Fraction(rhs2)


def verify_lemma_binomial(k: int, l: int, r: int) -> bool:
    """Exact check of both binomial-sum identities at (k, l, r).

    The identities are only claimed for 3 <= 2r+1 <= 2k+2l-3; outside that
    window the call raises instead of passing vacuously.
    """
    _require(k >= 1 and l >= 1, "k and l must be >= 1")
    _require(
        3 <= 2 * r + 1 <= 2 * k + 2 * l - 3,
        f"window 2r+1={2 * r + 1} outside 3..{2 * k + 2 * l - 3}",
    )
    lhs1, rhs1, lhs2, rhs2 = lemma_binomial_sides(k, l, r)
    return lhs1 == rhs1 and lhs2 == rhs2


def mod_products_sides_2242(a: int, b: int, r: int) -> Tuple[Fraction, Fraction]:
    """Both sides of the reduced binomial identity behind the two-block
    evaluation: the antisymmetrized window coefficients of the evaluation's
    two sides, collapsed to a single rational equation per r."""
    w = 2 * a + 2 * b
    m = w + 2 - 2 * r
    lhs = Fraction(0)
    for i in range(w + 1):
        j = w - i
        base = Fraction(_comb(i + 1, 2 * a + 1), 2 ** i) + Fraction(
            _comb(j + 1, 2 * b + 1), 2 ** j
        )
        win = (
            _comb(2 * r, i + 1)
            - _comb(2 * r, j + 1)
            - _comb(m, i + 1)
            + _comb(m, j + 1)
        )
        lhs += Fraction((-1) ** i) * base * win
    rhs = Fraction(2) ** (2 * r - w - 1) * (_comb(m, 2 * b + 1) - _comb(m, 2 * a + 1)) - Fraction(
        2
    ) ** (1 - 2 * r) * (_comb(2 * r, 2 * b + 1) - _comb(2 * r, 2 * a + 1))
    return lhs, rhs


def _phi_lhs_2242(a: int, b: int, r: int) -> Fraction:
    """Window coefficient of zeta({2}^a,4,{2}^b) on the depth-one slot
    zeta(2r+1) (x) zeta(2a+2b+3-2r), products discarded on the right."""
    m = 2 * a + 2 * b + 2 - 2 * r
    scale = Fraction(2) ** (2 * r - 2 * a - 2 * b - 2)
    out = Fraction(0)
    if r <= a:
        out += _comb(m, 2 * a - 2 * r + 2) - (1 - scale) * _comb(m, 2 * b + 1)
    if r <= b:
        out -= _comb(m, 2 * a + 2) - (1 - scale) * _comb(m, 2 * b - 2 * r + 1)
    return Fraction(4 * (-1) ** (a + b)) * out


def _phi_rhs_2242(a: int, b: int, r: int) -> Fraction:
    """Same slot coefficient for the closed form's right-hand side.

    Rules, term by term: a plain double zeta(p, q) contributes through the
    even-weight window formula; a product contributes only when one factor
    is a single of weight exactly 2r+1 (its window is the whole word) and
    the cofactor is a lone single of the complementary weight, alternating
    singles being folded onto zeta(N) by the depth-one descent.
    """
    n_slot = 2 * a + 2 * b + 3 - 2 * r

    def pi_single(atom: SignedIndex) -> Fraction:
        if atom.depth != 1 or atom.lead_zeros:
            raise ValueError(f"unexpected cofactor {atom}")
        k, eps = atom.parts[0]
        if k != n_slot:
            return Fraction(0)
        if eps == 1:
            return Fraction(1)
        return -(1 - Fraction(2) ** (1 - k))

    total = Fraction(0)
    for mono, c in zeta_2242_closed(a, b).rhs.items():
        if len(mono) == 1:
            atom = mono[0]
            if atom.lead_zeros:
                raise ValueError(f"unexpected atom {atom}")
            if atom.depth == 1:
                continue  # singles put 1 on the right leg, never the slot
            if atom.depth == 2 and all(e == 1 for _, e in atom.parts):
                p, q = atom.parts[0][0], atom.parts[1][0]
                total += c * (
                    (1 if 2 * r + 1 == p else 0)
                    + (-1) ** p * _comb(2 * r, p - 1)
                    - (-1) ** q * _comb(2 * r, q - 1)
                )
                continue
            raise ValueError(f"unexpected atom {atom}")
        for pos, atom in enumerate(mono):
            if atom.depth != 1 or atom.lead_zeros or atom.weight != 2 * r + 1:
                continue
            rest = mono[:pos] + mono[pos + 1 :]
            if len(rest) != 1:
                continue  # the cofactor would stay a product
            k, eps = atom.parts[0]
            left = Fraction(1) if eps == 1 else -(1 - Fraction(2) ** (1 - k))
            total += c * left * pi_single(rest[0])
    return total


def verify_mod_products_2242(a: int, b: int) -> Dict[int, bool]:
    """Exact window-by-window check that the two-block evaluation holds
    modulo products.

    For each odd window 3 <= 2r+1 <= 2a+2b+1 this verifies (i) the reduced
    binomial identity and (ii) that the depth-one slot coefficients of
    value and closed form agree after antisymmetrizing the window against
    its complementary one -- the two statements the evaluation argument
    reduces to.  Returns {r: passed}; the range is empty when a = b = 0.
    """
    _require(a >= 0 and b >= 0, "block lengths must be nonnegative")
    out: Dict[int, bool] = {}
    for r in range(1, a + b + 1):
        lhs, rhs = mod_products_sides_2242(a, b, r)
        phi = _phi_lhs_2242(a, b, r) - _phi_rhs_2242(a, b, r)
        r_star = a + b + 1 - r
        phi_star = _phi_lhs_2242(a, b, r_star) - _phi_rhs_2242(a, b, r_star)
        out[r] = (lhs == rhs) and (phi == phi_star)
    return out
