"""Words over {0,+1,-1}, signed zeta indices, and the products that relate them.

An index ``zeta[l](k_1,...,k_d)`` (each part carrying a sign) corresponds to the
iterated-integral word

    {0}^l, eta_1, {0}^{k_1-1}, eta_2, {0}^{k_2-1}, ..., eta_d, {0}^{k_d-1}

with eta_i = eps_i * eps_{i+1} * ... * eps_d, up to an overall sign (-1)^depth.
The first index part is the innermost summation variable.

Serialization:
  * words are strings over {0,1,m} ('m' encodes the letter -1), e.g. "10m0";
  * indices are "zeta(2,-3)" or "zeta[l=2](1,-2)" -- a negative entry is a
    barred (sign -1) argument, l= gives the count of leading zeros.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Tuple

from .exactalg import binom

__all__ = [
    "Word",
    "SignedIndex",
    "LinComb",
    "index_to_word",
    "word_to_index",
    "block_decomposition",
    "block_degree",
    "dual_word",
    "shuffle",
    "stuffle",
    "shuffle_regularize",
    "lift_divergent_word",
    "interp_expand",
    "words_to_indices",
]


class Word:
    """Immutable word over the alphabet {0, +1, -1}.

    Stands for the iterated integral I(0; letters; 1), read left to right.
    Convergent iff the first letter is nonzero and the last letter is not +1.
    The empty word is the constant 1.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int]):
        letters = tuple(letters)
        for a in letters:
            if a not in (0, 1, -1):
                raise ValueError(f"letter {a!r} not in {{0, +1, -1}}")
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Word is immutable")

    @property
    def weight(self) -> int:
        return len(self.letters)

    @property
    def convergent(self) -> bool:
        if not self.letters:
            return True
        return self.letters[0] != 0 and self.letters[-1] != 1

    def is_classical(self) -> bool:
        """True when every letter lies in {0,1}."""
        return all(a in (0, 1) for a in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        got = self.letters[i]
        return Word(got) if isinstance(i, slice) else got

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(("Word", self.letters))

    def sort_key(self):
        return ("w", self.letters)

    def __str__(self) -> str:
        return "".join("m" if a == -1 else str(a) for a in self.letters)

    __repr__ = __str__

    @classmethod
    def parse(cls, s: str) -> "Word":
        table = {"0": 0, "1": 1, "m": -1}
        try:
            return cls(table[ch] for ch in s.strip())
        except KeyError as exc:
            raise ValueError(f"bad word string {s!r}") from exc


class SignedIndex:
    """zeta_l(k_1, ..., k_d) with signs: parts are (k, eps) pairs, eps = +-1.

    Convergent iff lead_zeros == 0 and the last part is not (1, +1).
    """

    __slots__ = ("parts", "lead_zeros")

    def __init__(self, parts: Iterable[Tuple[int, int]], lead_zeros: int = 0):
        parts = tuple((int(k), int(e)) for k, e in parts)
        for k, e in parts:
            if k < 1 or e not in (1, -1):
                raise ValueError(f"bad index part ({k},{e})")
        if lead_zeros < 0:
            raise ValueError("lead_zeros must be >= 0")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "lead_zeros", lead_zeros)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("SignedIndex is immutable")

    @classmethod
    def of(cls, *entries: int, l: int = 0) -> "SignedIndex":
        """Convenience: SignedIndex.of(2, -3) = zeta(2, 3bar)."""
        return cls(((abs(k), 1 if k > 0 else -1) for k in entries), l)

    @property
    def weight(self) -> int:
        return self.lead_zeros + sum(k for k, _ in self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def convergent(self) -> bool:
        return self.lead_zeros == 0 and (
            not self.parts or self.parts[-1] != (1, 1)
        )

    def signed_entries(self) -> Tuple[int, ...]:
        return tuple(k * e for k, e in self.parts)

    def __eq__(self, other):
        return (
            isinstance(other, SignedIndex)
            and self.parts == other.parts
            and self.lead_zeros == other.lead_zeros
        )

    def __hash__(self):
        return hash(("SignedIndex", self.parts, self.lead_zeros))

    def sort_key(self):
        return ("z", self.lead_zeros, self.parts)

    def __str__(self) -> str:
        body = ",".join(str(k * e) for k, e in self.parts)
        if self.lead_zeros:
            return f"zeta[l={self.lead_zeros}]({body})"
        return f"zeta({body})"

    __repr__ = __str__

    _RE = re.compile(r"^zeta(?:\[l=(\d+)\])?\(([^()]*)\)$")

    @classmethod
    def parse(cls, s: str) -> "SignedIndex":
        m = cls._RE.match(s.strip())
        if not m:
            raise ValueError(f"bad index string {s!r}")
        l = int(m.group(1)) if m.group(1) else 0
        body = m.group(2).strip()
        entries = [int(tok) for tok in body.split(",")] if body else []
        if any(e == 0 for e in entries):
            raise ValueError("index parts must be nonzero")
        return cls.of(*entries, l=l)


Monomial = Tuple[object, ...]  # sorted tuple of atoms (Word / SignedIndex)


def _mono(atoms: Iterable) -> Monomial:
    return tuple(sorted(atoms, key=lambda a: a.sort_key()))


class LinComb:
    """Q-linear combination of commutative monomials in formal symbols.

    ``terms`` maps a monomial -- a sorted tuple of atoms (Word or SignedIndex
    objects) -- to a nonzero Fraction.  The empty monomial is the constant 1.
    Products are formal; nothing is evaluated here.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[_mono(mono)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("LinComb is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def one(cls) -> "LinComb":
        return cls({(): Fraction(1)})

    @classmethod
    def const(cls, c) -> "LinComb":
        return cls({(): Fraction(c)})

    @classmethod
    def atom(cls, a, coeff=1) -> "LinComb":
        return cls({(a,): Fraction(coeff)})

    # -- vector space / ring -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinComb.const(other)
        if not isinstance(other, LinComb):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LinComb(out)

    __radd__ = __add__

    def __neg__(self):
        return LinComb({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinComb.const(other)
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return LinComb({m: c * v for m, v in self.terms.items()}) if c else LinComb()
        if not isinstance(other, LinComb):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono(m1 + m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return LinComb(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LinComb.const(other)
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- structure ------------------------------------------------------------
    def items(self):
        return self.terms.items()

    def atoms(self):
        seen = set()
        for m in self.terms:
            seen.update(m)
        return seen

    def coeff(self, *atoms) -> Fraction:
        return self.terms.get(_mono(atoms), Fraction(0))

    def map_atoms(self, f) -> "LinComb":
        """Substitute f(atom) -> LinComb for every atom, multiplicatively."""
        out = LinComb()
        for m, c in self.terms.items():
            prod = LinComb.const(c)
            for a in m:
                prod = prod * f(a)
            out = out + prod
        return out

    def map_coeffs(self, f) -> "LinComb":
        return LinComb({m: f(c) for m, c in self.terms.items()})

    def all_indices_convergent(self) -> bool:
        return all(
            a.convergent for a in self.atoms() if isinstance(a, (SignedIndex, Word))
        )

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda mono: tuple(a.sort_key() for a in mono)):
            c = self.terms[m]
            body = "*".join(str(a) for a in m) if m else "1"
            bits.append(f"({c})*{body}")
        return " + ".join(bits)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# the index <-> word dictionary
# ---------------------------------------------------------------------------

def index_to_word(idx: SignedIndex) -> Tuple[int, Word]:
    """(sign, word) with sign = (-1)^depth and the eta-encoded letters."""
    letters = [0] * idx.lead_zeros
    eta = 1
    etas = []
    for _, e in reversed(idx.parts):
        eta *= e
        etas.append(eta)
    etas.reverse()
    for (k, _), eta_i in zip(idx.parts, etas):
        letters.append(eta_i)
        letters.extend([0] * (k - 1))
    return (-1) ** idx.depth, Word(letters)


def word_to_index(w: Word) -> Tuple[int, SignedIndex]:
    """Inverse of index_to_word.  Requires a non-empty word."""
    if not w.letters:
        raise ValueError("cannot convert the empty word to an index")
    letters = w.letters
    i = 0
    while i < len(letters) and letters[i] == 0:
        i += 1
    lead = i
    etas = []
    ks = []
    while i < len(letters):
        etas.append(letters[i])
        i += 1
        k = 1
        while i < len(letters) and letters[i] == 0:
            k += 1
            i += 1
        ks.append(k)
    eps = []
    for j, eta in enumerate(etas):
        nxt = etas[j + 1] if j + 1 < len(etas) else 1
        eps.append(eta * nxt)
    idx = SignedIndex(zip(ks, eps), lead)
    return (-1) ** idx.depth, idx


# ---------------------------------------------------------------------------
# blocks and duality (classical alphabet {0,1} only)
# ---------------------------------------------------------------------------

def _require_classical(w: Word, what: str):
    if not w.is_classical():
        raise ValueError(f"{what} is defined only for words over {{0,1}}")


def block_decomposition(w: Word) -> Tuple[int, ...]:
    """Lengths of the maximal alternating blocks of 0.w.1; sums to weight+2."""
    _require_classical(w, "block decomposition")
    ext = (0,) + w.letters + (1,)
    lengths = []
    run = 1
    for prev, cur in zip(ext, ext[1:]):
        if cur == prev:
            lengths.append(run)
            run = 1
        else:
            run += 1
    lengths.append(run)
    return tuple(lengths)


def block_degree(w: Word) -> int:
    """Number of adjacent equal pairs in 0.w.1 (= number of blocks - 1)."""
    _require_classical(w, "block degree")
    ext = (0,) + w.letters + (1,)
    return sum(1 for a, b in zip(ext, ext[1:]) if a == b)


def dual_word(w: Word) -> Tuple[int, Word]:
    """Duality: reverse and complement 0<->1; sign (-1)^weight."""
    _require_classical(w, "duality")
    return (-1) ** w.weight, Word(1 - a for a in reversed(w.letters))


# ---------------------------------------------------------------------------
# shuffle and stuffle
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _shuffle_letters(u: Tuple[int, ...], v: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: Dict[Tuple[int, ...], int] = {}
    for w, c in _shuffle_letters(u[1:], v).items():
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle_letters(u, v[1:]).items():
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    return out


def shuffle(u: Word, v: Word) -> LinComb:
    """All interleavings of u and v preserving internal order (with multiplicity)."""
    return LinComb(
        {(Word(w),): Fraction(c) for w, c in _shuffle_letters(u.letters, v.letters).items()}
    )


def _merge_parts(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
    return (x[0] + y[0], x[1] * y[1])


@lru_cache(maxsize=None)
def _stuffle_parts(p: Tuple, q: Tuple) -> Dict[Tuple, int]:
    # recursion on the *last* (outermost) parts
    if not p:
        return {q: 1}
    if not q:
        return {p: 1}
    out: Dict[Tuple, int] = {}
    for r, c in _stuffle_parts(p[:-1], q).items():
        key = r + (p[-1],)
        out[key] = out.get(key, 0) + c
    for r, c in _stuffle_parts(p, q[:-1]).items():
        key = r + (q[-1],)
        out[key] = out.get(key, 0) + c
    for r, c in _stuffle_parts(p[:-1], q[:-1]).items():
        key = r + (_merge_parts(p[-1], q[-1]),)
        out[key] = out.get(key, 0) + c
    return out


def stuffle(a: SignedIndex, b: SignedIndex) -> LinComb:
    """Quasi-shuffle with merge (k,e) + (k',e') = (k+k', e*e').

    Both inputs must have lead_zeros = 0 (the series product makes no sense
    otherwise).
    """
    if a.lead_zeros or b.lead_zeros:
        raise ValueError("stuffle requires lead_zeros = 0")
    return LinComb(
        {
            (SignedIndex(parts),): Fraction(c)
            for parts, c in _stuffle_parts(a.parts, b.parts).items()
        }
    )


# ---------------------------------------------------------------------------
# shuffle regularization (T = 0)
# ---------------------------------------------------------------------------

def shuffle_regularize(idx: SignedIndex) -> LinComb:
    """Push leading zeros into the parts:

        zeta_l^{sh,0}(k) = (-1)^l sum_{i_1+...+i_d = l}
                           prod_j C(k_j + i_j - 1, i_j) zeta(k (+) i).

    Requires a convergent tail ((k_d, eps_d) != (1,+1)); the signs eps_j ride
    along unchanged.
    """
    if idx.parts and idx.parts[-1] == (1, 1):
        raise ValueError("divergent tail: last part is (1,+1)")
    l, parts = idx.lead_zeros, idx.parts
    d = len(parts)
    if d == 0:
        return LinComb.one() if l == 0 else LinComb.zero()
    out = LinComb.zero()
    sign = (-1) ** l
    for comp in _compositions(l, d):
        coeff = sign
        new_parts = []
        for (k, e), i in zip(parts, comp):
            coeff *= binom(k + i - 1, i)
            new_parts.append((k + i, e))
        if coeff:
            out = out + LinComb.atom(SignedIndex(new_parts), coeff)
    return out


def _compositions(total: int, d: int):
    """All d-tuples of non-negative integers summing to total."""
    if d == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, d - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# full word-level regularization: any word -> convergent indices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _lift(letters: Tuple[int, ...]) -> Dict[SignedIndex, Fraction]:
    """Shuffle-regularize (T=0) the word I(0; letters; 1).

    Uses reg([1]) = reg([0]) = 0 and the fact that reg is a shuffle
    homomorphism: shuffling off one trailing 1 (resp. leading 0) at a time
    rewrites the word in terms of words with a strictly shorter divergent run.
    """
    n = len(letters)
    if n == 0:
        raise ValueError("empty word handled by caller")
    if letters[0] != 0 and letters[-1] != 1:
        sign, idx = word_to_index(Word(letters))
        return {idx: Fraction(sign)}
    out: Dict[SignedIndex, Fraction] = {}
    if letters[-1] == 1:
        u, probe = letters[:-1], (1,)
    else:
        u, probe = letters[1:], (0,)
    counts = dict(_shuffle_letters(probe, u))
    lead = Fraction(counts.pop(letters))
    for w2, c in counts.items():
        for idx, q in _lift(w2).items():
            s = out.get(idx, Fraction(0)) - Fraction(c) / lead * q
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
    return out


def lift_divergent_word(w: Word) -> LinComb:
    """Express any word as a Q-combination of convergent indices (T=0 shuffle reg)."""
    if not w.letters:
        return LinComb.one()
    return LinComb({(idx,): c for idx, c in _lift(w.letters).items()})


def words_to_indices(lc: LinComb) -> LinComb:
    """Replace every Word atom by its (possibly regularized) index expansion."""

    def f(a):
        if isinstance(a, Word):
            return lift_divergent_word(a)
        return LinComb.atom(a)

    return lc.map_atoms(f)


# ---------------------------------------------------------------------------
# Yamamoto interpolation
# ---------------------------------------------------------------------------

def interp_expand(idx: SignedIndex, r) -> LinComb:
    """zeta^r: at each comma either keep it or merge, weighting r^{#merges}.

    r=0 is the identity, r=1 gives the star value.
    """
    if idx.lead_zeros:
        raise ValueError("interp_expand requires lead_zeros = 0")
    if not idx.convergent:
        raise ValueError("interp_expand requires a convergent index")
    r = Fraction(r)
    parts = idx.parts
    d = len(parts)
    if d == 0:
        return LinComb.one()
    out = LinComb.zero()
    for merges in range(1 << (d - 1)):
        merged = [parts[0]]
        nmerge = 0
        for j in range(1, d):
            if merges >> (j - 1) & 1:
                merged[-1] = _merge_parts(merged[-1], parts[j])
                nmerge += 1
            else:
                merged.append(parts[j])
        out = out + LinComb.atom(SignedIndex(merged), r**nmerge)
    return out
