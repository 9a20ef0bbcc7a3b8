"""Exact rational arithmetic helpers: special numbers and small multivariate polynomials.

Everything here is exact (stdlib ``fractions.Fraction``); no floats ever enter.
The polynomial class is deliberately simple -- dense exponent-vector keys in a
dict -- because every polynomial in this project has at most 3 variables and
degree < 50, so sparse cleverness buys nothing.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

__all__ = [
    "bernoulli",
    "euler_number",
    "binom",
    "MultiPoly",
    "poly_substitute",
]


# ---------------------------------------------------------------------------
# special numbers
# ---------------------------------------------------------------------------

# Memo tables, grown on demand.  Writers take the lock; readers may race
# benignly (list append is atomic under the GIL, and entries are immutable).
_BERN: List[Fraction] = [Fraction(1), Fraction(-1, 2)]
_EULER: List[int] = [1]  # even-index Euler numbers E_0, E_2, E_4, ...
_memo_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the B_1 = -1/2 convention.

    Computed from the defining recurrence  sum_{k=0}^{n} C(n+1,k) B_k = 0
    (n >= 1), which pins down B_n once B_0 = 1 is fixed.
    """
    if n < 0:
        raise ValueError("bernoulli: n must be >= 0")
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    if n < len(_BERN):
        return _BERN[n]
    with _memo_lock:
        while len(_BERN) <= n:
            m = len(_BERN)
            if m % 2 == 1:  # odd > 1: zero, but keep the table dense
                _BERN.append(Fraction(0))
                continue
            acc = Fraction(0)
            for k in range(m):
                acc += math.comb(m + 1, k) * _BERN[k]
            _BERN.append(-acc / (m + 1))
    return _BERN[n]


def euler_number(n: int) -> int:
    """Euler number E_n: coefficient of t^n/n! in sech(t).  E_odd = 0.

    Recurrence from cosh(t) * sech(t) = 1:
        sum_{k=0}^{m} C(2m, 2k) E_{2k} = 0   for m >= 1.
    """
    if n < 0:
        raise ValueError("euler_number: n must be >= 0")
    if n % 2 == 1:
        return 0
    half = n // 2
    if half < len(_EULER):
        return _EULER[half]
    with _memo_lock:
        while len(_EULER) <= half:
            m = len(_EULER)
            acc = 0
            for k in range(m):
                acc += math.comb(2 * m, 2 * k) * _EULER[k]
            _EULER.append(-acc)
    return _EULER[half]


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient for integer arguments.

    k < 0 gives 0.  Negative upper argument uses the reflection
    C(-n, k) = (-1)^k C(n+k-1, k), so e.g. binom(-2, 3) = -4.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # n < 0: always nonzero for k >= 0
    return (-1) ** k * math.comb(-n + k - 1, k)


# ---------------------------------------------------------------------------
# multivariate polynomials over Q
# ---------------------------------------------------------------------------

_Expt = Tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected int or Fraction coefficient, got {type(c).__name__}")


class MultiPoly:
    """Polynomial in ``nvars`` variables over Q.

    terms: dict mapping exponent tuple -> nonzero Fraction.  Instances are
    treated as immutable; all operations return fresh objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[_Expt, Fraction] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        clean: Dict[_Expt, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for nvars={nvars}")
            c = _as_fraction(c)
            if c != 0:
                clean[exps] = c
        self.nvars = nvars
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        c = _as_fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        """The monomial x_i (0-based index)."""
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for nvars={nvars}")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): _as_fraction(coeff)})

    # -- ring structure ----------------------------------------------------
    def _check_compatible(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials have different variable counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_compatible(other)
        out: Dict[_Expt, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -----------------------------------------------------------
    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention here."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    # -- calculus / evaluation ----------------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        """Partial derivative with respect to x_i (0-based)."""
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        out: Dict[_Expt, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def evaluate(self, vals: Sequence) -> Fraction:
        if len(vals) != self.nvars:
            raise ValueError("wrong number of values")
        vals = [_as_fraction(v) for v in vals]
        acc = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                term *= v**p
            acc += term
        return acc

    def substitute(self, assignment: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: substitute assignment[i] for variable x_i.  Exact."""
        if len(assignment) != self.nvars:
            raise ValueError(
                f"assignment length {len(assignment)} != nvars {self.nvars}"
            )
        if not assignment:
            # constants in 0 variables map to themselves
            return MultiPoly(0, dict(self.terms))
        nv = assignment[0].nvars
        for q in assignment:
            if q.nvars != nv:
                raise ValueError("assignment entries disagree on variable count")
        # cache powers of each substituted polynomial as needed
        pow_cache: List[Dict[int, MultiPoly]] = [
            {0: MultiPoly.const(1, nv), 1: q} for q in assignment
        ]

        def power(i: int, p: int) -> MultiPoly:
            cache = pow_cache[i]
            if p not in cache:
                cache[p] = power(i, p - 1) * pow_cache[i][1]
            return cache[p]

        acc = MultiPoly(nv)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, nv)
            for i, p in enumerate(e):
                if p:
                    term = term * power(i, p)
            acc = acc + term
        return acc

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i+1}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def poly_substitute(p: MultiPoly, assignment: Iterable[MultiPoly]) -> MultiPoly:
    """Exact composition p(assignment[0], ..., assignment[n-1])."""
    return p.substitute(list(assignment))
