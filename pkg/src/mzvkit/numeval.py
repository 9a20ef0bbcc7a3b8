"""Arbitrary-precision evaluation of alternating MZVs and multiple t values.

Two fully independent strategies live here:

1. The main engine (`eval_index`): split the iterated integral at 1/2 by path
   composition, turning every convergent word into a sum of products of
   polylogarithm-type series whose telescoped weights all have modulus <= 1/2.
   Geometric convergence at every weight and depth, with an explicit tail
   bound, so the returned error bars are honest.

2. A direct-summation oracle (`eval_index_direct`, depth <= 3, and `eval_t`):
   truncated nested sums with closed-form inner partials (Hurwitz zeta,
   lerchphi, digamma) and Richardson/Shanks acceleration on the outermost sum
   via mpmath.nsum, cross-run at two precisions.  Used to check the engine,
   never the other way round.

Values are mpmath.mpf; the engine's inner loop runs in gmpy2.mpfr when
available (about 20x faster) and converts exactly at the boundary.
"""

from __future__ import annotations

import json
import math
import os
import threading
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from mpmath.libmp import from_man_exp

try:
    import gmpy2

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    _HAVE_GMPY2 = False

from .exactalg import bernoulli
from .mzvword import LinComb, SignedIndex, Word, index_to_word, word_to_index

__all__ = [
    "BigReal",
    "ConstCache",
    "eval_index",
    "eval_index_direct",
    "eval_lincomb",
    "eval_word",
    "eval_t",
    "pi_power",
    "log2",
    "zeta_single",
    "zeta_single_alt",
    "set_cache",
    "clear_memo",
]

_DEFAULT_DIGITS = 50


# ---------------------------------------------------------------------------
# BigReal: value + conservative absolute error bound
# ---------------------------------------------------------------------------

_MIN_OP_BITS = 420  # mpmath rounds every operation to context precision, so
# BigReal arithmetic runs at a floor precision well below any error bound this
# project produces (~10^-126), independent of the ambient mp.prec.


def _work_bits(*vals) -> int:
    bits = max(mpmath.mp.prec, _MIN_OP_BITS)
    for v in vals:
        bits = max(bits, v._mpf_[1].bit_length() + 32)
    return bits


class BigReal:
    """An mpf value with a conservative absolute error bound (a float).

    Arithmetic chooses its own working precision (at least the operands'
    mantissa lengths), so results do not silently round to the ambient
    mpmath context.
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err: float = 0.0):
        self.value = mpmath.mpf(value) if not isinstance(value, mpmath.mpf) else value
        self.err = float(err)
        if not (self.err >= 0.0 and math.isfinite(self.err)):
            raise ValueError(f"bad error bound {err!r}")

    def __add__(self, other):
        other = _as_bigreal(other)
        with mpmath.workprec(_work_bits(self.value, other.value)):
            v = self.value + other.value
            return BigReal(v, self.err + other.err + _ulp2(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        with mpmath.workprec(_work_bits(self.value)):
            return BigReal(-self.value, self.err)

    def __sub__(self, other):
        return self + (-_as_bigreal(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_bigreal(other)
        a, b = self, other
        with mpmath.workprec(_work_bits(a.value, b.value)):
            v = a.value * b.value
            err = (
                abs(float(a.value)) * b.err
                + abs(float(b.value)) * a.err
                + a.err * b.err
                + _ulp2(v)
            )
        return BigReal(v, err)

    __rmul__ = __mul__

    def agrees(self, other, tol: float = 0.0) -> bool:
        other = _as_bigreal(other)
        with mpmath.workprec(_work_bits(self.value, other.value)):
            gap = abs(float(self.value - other.value))
        return gap <= self.err + other.err + tol

    def __str__(self):
        return f"{mpmath.nstr(self.value, 30)} (+/- {self.err:.3g})"

    __repr__ = __str__


def _as_bigreal(x) -> BigReal:
    if isinstance(x, BigReal):
        return x
    if isinstance(x, Fraction):
        v = _mpf_from_fraction(x)
        return BigReal(v, abs(float(v)) * 2.0 ** (-_MIN_OP_BITS + 8))
    if isinstance(x, (int, float, mpmath.mpf)):
        return BigReal(mpmath.mpf(x), 0.0)
    raise TypeError(f"cannot treat {type(x).__name__} as BigReal")


def _ulp2(*vals) -> float:
    """A few ulps at current working precision, scaled by the magnitudes."""
    scale = max([1.0] + [abs(float(v)) for v in vals])
    return scale * 8.0 * 2.0 ** (-mpmath.mp.prec)


def _mpf_from_fraction(q: Fraction):
    with mpmath.workprec(max(mpmath.mp.prec, _MIN_OP_BITS) + 32):
        return mpmath.mpf(q.numerator) / q.denominator


# ---------------------------------------------------------------------------
# the Hoelder-split engine
# ---------------------------------------------------------------------------

def _to_groups(letters: Sequence[int]) -> List[Tuple[int, int]]:
    """Parse y_1 0^{c_1} ... y_d 0^{c_d} into [(y_i, 1+c_i)]; first letter != 0."""
    if letters and letters[0] == 0:
        raise ValueError("series word must not start with 0")
    groups: List[Tuple[int, int]] = []
    for a in letters:
        if a != 0:
            groups.append((a, 1))
        else:
            g, k = groups[-1]
            groups[-1] = (g, k + 1)
    return groups


def _choose_N(d: int, tail_target: Fraction) -> int:
    """Smallest N with 4 * (1/2)^{N+1} * C(N, d-1) <= tail_target.

    Valid because each block of terms with n_d = n is bounded by
    (1/2)^n C(n-1, d-1), and for n >= 3(d-1) consecutive bounds decay by >= 3/4.
    """
    N = max(3 * (d - 1) + 1, 32)
    while Fraction(4 * math.comb(N, d - 1), 2 ** (N + 1)) > tail_target:
        N += 32
    return N


def _series_sum(groups, N: int, R):
    """sum over 0<n_1<...<n_d<=N of prod (z/y_i)^{m_i} / n_i^{k_i}, z = 1/2.

    R converts small exact rationals to the backend float type.  Returns the
    signed value (-1)^d * sum.  All intermediates are bounded by 1 in modulus.
    """
    d = len(groups)
    zero = R(0)
    B = [zero] * (N + 1)
    B[0] = R(1)
    for j, (g, k) in enumerate(groups, start=1):
        W = R(Fraction(1, 2 * g))  # exact dyadic for g in {1,-1,2}... and -2
        D = zero
        Bj = [zero] * (N + 1)
        for n in range(1, N + 1):
            D = W * (D + B[n - 1])
            if n >= j:
                Bj[n] = D / R(n) ** k
        B = Bj
    total = zero
    for n in range(d, N + 1):
        total += B[n]
    return total if d % 2 == 0 else -total


def _eval_word_engine(letters: Tuple[int, ...], digits: int) -> BigReal:
    """I(0; letters; 1) for a convergent word, by splitting the path at 1/2."""
    n = len(letters)
    if n == 0:
        return BigReal(mpmath.mpf(1), 0.0)
    if letters[0] == 0 or letters[-1] == 1:
        raise ValueError("engine requires a convergent word")
    bits = int(digits * 3.3220) + 96
    # per-series tail target: the final sum has n+1 products of two factors
    tail_target = Fraction(1, 10 ** (digits + 6)) / (4 * (n + 1))

    if _HAVE_GMPY2:
        ctx = gmpy2.context(precision=bits)
        R = gmpy2.mpfr
        to_mpf = _gmpy2_to_mpf
    else:  # pragma: no cover - exercised only without gmpy2
        ctx = mpmath.workprec(bits)
        R = _mpf_from_int_frac
        to_mpf = lambda x: x

    with ctx:
        factors = []  # (P_k, S_k) backend values
        for k in range(n + 1):
            pre = letters[:k]
            suf = letters[k:]
            if pre:
                gp = _to_groups(pre)
                P = _series_sum(gp, _choose_N(len(gp), tail_target), R)
            else:
                P = R(1)
            if suf:
                trans = tuple(1 - a for a in reversed(suf))
                gs = _to_groups(trans)
                S = _series_sum(gs, _choose_N(len(gs), tail_target), R)
                if len(suf) % 2 == 1:
                    S = -S
            else:
                S = R(1)
            factors.append((P, S))
        total = R(0)
        for P, S in factors:
            total += P * S
        value = to_mpf(total)

    # error: per-factor tails, cross terms, and rounding slop
    t = float(tail_target)
    tail_err = sum(
        (abs(float(to_mpf(P))) + abs(float(to_mpf(S)))) * t + t * t for P, S in factors
    )
    ops = (n + 1) * 2 * (_choose_N(n, tail_target) * (n + 2) + 64)
    round_err = ops * 4.0 * 2.0 ** (-bits)
    with mpmath.workprec(bits):
        return BigReal(value, tail_err + round_err)


def _gmpy2_to_mpf(x):
    """Exact gmpy2.mpfr -> mpmath.mpf conversion."""
    if x == 0:
        return mpmath.mpf(0)
    m, e = x.as_mantissa_exp()
    return mpmath.mp.make_mpf(from_man_exp(int(m), int(e)))


def _mpf_from_int_frac(q):  # pragma: no cover - mpmath fallback backend
    if isinstance(q, Fraction):
        return mpmath.mpf(q.numerator) / q.denominator
    return mpmath.mpf(q)


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

class ConstCache:
    """Advisory JSON-backed store: canonical index string -> (value, err, digits)."""

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self.entries: Dict[str, dict] = {}
        self._lock = threading.Lock()
        if path and os.path.exists(path):
            with open(path) as fh:
                self.entries = json.load(fh)

    def get(self, key: str, digits: int) -> Optional[BigReal]:
        e = self.entries.get(key)
        if not e or e["digits"] < digits:
            return None
        with mpmath.workprec(int(e["digits"] * 3.33) + 64):
            return BigReal(mpmath.mpf(e["value"]), float(e["err"]))

    def put(self, key: str, val: BigReal, digits: int) -> None:
        with self._lock:
            old = self.entries.get(key)
            if old and old["digits"] >= digits:
                return
            self.entries[key] = {
                "value": mpmath.nstr(
                    val.value, digits + 12, strip_zeros=False
                ),
                "err": repr(val.err),
                "digits": digits,
            }

    def save(self) -> None:
        if not self.path:
            return
        with self._lock:
            tmp = self.path + ".tmp"
            with open(tmp, "w") as fh:
                json.dump(self.entries, fh, indent=0, sort_keys=True)
            os.replace(tmp, self.path)


_active_cache: Optional[ConstCache] = None
_memo: Dict[Tuple[str, int], BigReal] = {}


def set_cache(cache: Optional[ConstCache]) -> None:
    global _active_cache
    _active_cache = cache


def clear_memo() -> None:
    _memo.clear()


# ---------------------------------------------------------------------------
# public evaluation API
# ---------------------------------------------------------------------------

def eval_index(idx: SignedIndex, digits: int = _DEFAULT_DIGITS) -> BigReal:
    """Evaluate a convergent signed index to |err| <= 10^-digits (engine route)."""
    if not idx.convergent:
        raise ValueError(f"{idx} is divergent; regularize first")
    key = str(idx)
    hit = _memo.get((key, digits))
    if hit is not None:
        return hit
    if _active_cache is not None:
        hit = _active_cache.get(key, digits)
        if hit is not None:
            _memo[(key, digits)] = hit
            return hit
    sign, w = index_to_word(idx)
    out = _eval_word_engine(w.letters, digits)
    if sign < 0:
        out = -out
    _memo[(key, digits)] = out
    if _active_cache is not None:
        _active_cache.put(key, out, digits)
    return out


def eval_word(w: Word, digits: int = _DEFAULT_DIGITS) -> BigReal:
    """I(0; w; 1) for a convergent word."""
    if not w.convergent:
        raise ValueError(f"word {w} is divergent; lift_divergent_word first")
    if not w.letters:
        return BigReal(mpmath.mpf(1), 0.0)
    sign, idx = word_to_index(w)
    out = eval_index(idx, digits)
    return -out if sign < 0 else out  # zeta = sign * I, so I = sign * zeta


def eval_lincomb(c: LinComb, digits: int = _DEFAULT_DIGITS) -> BigReal:
    """Exact-rational-weighted sum of products of atom evaluations."""
    with mpmath.workprec(int(digits * 3.33) + 64):
        total = BigReal(mpmath.mpf(0), 0.0)
        for mono, coeff in c.items():
            term = _as_bigreal(coeff)
            for atom in mono:
                if isinstance(atom, SignedIndex):
                    term = term * eval_index(atom, digits)
                elif isinstance(atom, Word):
                    term = term * eval_word(atom, digits)
                else:
                    raise TypeError(f"cannot evaluate atom {atom!r}")
            total = total + term
        return total


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def pi_power(k: int, digits: int = _DEFAULT_DIGITS) -> BigReal:
    with mpmath.workprec(int(digits * 3.33) + 64):
        v = mpmath.pi**k
        return BigReal(v, _ulp2(v) * (k + 1))


def log2(digits: int = _DEFAULT_DIGITS) -> BigReal:
    with mpmath.workprec(int(digits * 3.33) + 64):
        v = mpmath.log(2)
        return BigReal(v, _ulp2(v))


def zeta_single(n: int, digits: int = _DEFAULT_DIGITS) -> BigReal:
    """zeta(n), n >= 2; even n via the Bernoulli closed form."""
    if n < 2:
        raise ValueError("zeta_single requires n >= 2")
    with mpmath.workprec(int(digits * 3.33) + 64):
        if n % 2 == 0:
            m = n // 2
            rat = (
                Fraction((-1) ** (m + 1))
                * bernoulli(2 * m)
                * Fraction(2**n)
                / (2 * Fraction(math.factorial(n)))
            )
            v = _mpf_from_fraction(rat) * mpmath.pi**n
            return BigReal(v, _ulp2(v) * (n + 2))
        v = mpmath.zeta(n)
        return BigReal(v, _ulp2(v) * 4)


def zeta_single_alt(n: int, digits: int = _DEFAULT_DIGITS) -> BigReal:
    """zeta(nbar) = -(1 - 2^{1-n}) zeta(n); zeta(1bar) = -log 2."""
    if n < 1:
        raise ValueError("zeta_single_alt requires n >= 1")
    if n == 1:
        return -log2(digits)
    with mpmath.workprec(int(digits * 3.33) + 64):
        return zeta_single(n, digits) * Fraction(-(2 ** (n - 1) - 1) * 2, 2**n)


# ---------------------------------------------------------------------------
# direct-summation oracle (independent of the engine)
# ---------------------------------------------------------------------------

def _nsum_two_prec(f_builder, digits: int, label: str) -> BigReal:
    """Run an nsum-based computation at two precisions; bound err by the drift."""
    vals = []
    for dps in (digits + 6, digits + 14):
        with mpmath.workdps(dps):
            vals.append(f_builder())
    v1, v2 = vals
    drift = abs(float(v1 - v2))
    err = max(drift * 10.0, 10.0 ** (-(digits + 2)))
    if drift > 1e-6:
        raise ArithmeticError(f"direct oracle unstable for {label}: drift {drift}")
    with mpmath.workdps(digits + 14):
        return BigReal(mpmath.mpf(v2), err)


def _alt_tail(k: int, n):
    """sum_{j>=0} (-1)^j (n+j)^{-k}, analytic in n (Lerch via Hurwitz/digamma)."""
    if k == 1:
        return (mpmath.digamma((n + 1) / 2) - mpmath.digamma(n / 2)) / 2
    return (mpmath.zeta(k, n / 2) - mpmath.zeta(k, (n + 1) / 2)) / mpmath.mpf(2) ** k


def _piece_sum(f, sign: int, has_log: bool):
    """sum_{n>=1} sign^n f(n) for analytic f.

    Alternating pieces are paired into a smooth series first.  Pieces whose
    asymptotics carry log n (a digamma factor) need Euler-Maclaurin; the rest
    converge quickly under mpmath's default extrapolation.
    """
    if sign == -1:
        g = lambda m: f(2 * m) - f(2 * m - 1)
    else:
        g = f
    if has_log:
        return mpmath.nsum(g, [1, mpmath.inf], method="e")
    return mpmath.nsum(g, [1, mpmath.inf])


def _inner_partial(k: int, e: int):
    """A(n-1) = sum_{m<n} e^m m^{-k} decomposed as p(n) - s^n r(n).

    Returns (p, s, r, p_has_log); r is None in the harmonic case, where the
    partial sum itself is the smooth closed form.
    """
    if (k, e) == (1, 1):
        g = mpmath.euler
        return (lambda n: mpmath.digamma(n) + g), 1, None, True
    if e == 1:
        c = mpmath.zeta(k)
        return (lambda n, c=c: c), 1, (lambda n, k=k: mpmath.zeta(k, n)), False
    c = mpmath.polylog(k, -1)
    return (lambda n, c=c: c), -1, (lambda n, k=k: _alt_tail(k, n)), False


def _outer_tail(k: int, e: int):
    """T(n) = sum_{m>n} e^m m^{-k} written as s^n r(n); returns (s, r)."""
    if e == 1:
        return 1, (lambda n, k=k: mpmath.zeta(k, n + 1))
    return -1, (lambda n, k=k: -_alt_tail(k, n + 1))


def eval_index_direct(idx: SignedIndex, digits: int = 24) -> BigReal:
    """Direct nested summation oracle, depth <= 3.

    Depth 3 is summed over the middle variable: the inner partial sum and the
    outer tail both have analytic closed forms, so every piece is a smooth or
    alternating series of special-function values.  Each evaluation is
    cross-run at two precisions and the drift bounds the reported error.
    """
    if not idx.convergent:
        raise ValueError("oracle requires a convergent index")
    d = idx.depth
    if d == 0:
        return BigReal(mpmath.mpf(1), 0.0)
    if d > 3:
        raise ValueError("direct oracle only supports depth <= 3")
    parts = idx.parts

    if d == 1:
        (k, e) = parts[0]

        def depth1():
            return mpmath.zeta(k) if e == 1 else mpmath.polylog(k, -1)

        return _nsum_two_prec(depth1, digits, str(idx))

    if d == 2:
        (k1, e1), (k2, e2) = parts

        def depth2():
            p, s1, r1, p_log = _inner_partial(k1, e1)
            total = _piece_sum(lambda n: p(n) / mpmath.mpf(n) ** k2, e2, p_log)
            if r1 is not None:
                total -= _piece_sum(
                    lambda n: r1(n) / mpmath.mpf(n) ** k2, e2 * s1, False
                )
            return total

        return _nsum_two_prec(depth2, digits, str(idx))

    (k1, e1), (k2, e2), (k3, e3) = parts

    def depth3():
        p, s1, r1, p_log = _inner_partial(k1, e1)
        s3, r3 = _outer_tail(k3, e3)
        total = _piece_sum(
            lambda n: p(n) * r3(n) / mpmath.mpf(n) ** k2, e2 * s3, p_log
        )
        if r1 is not None:
            total -= _piece_sum(
                lambda n: r1(n) * r3(n) / mpmath.mpf(n) ** k2, e2 * s1 * s3, False
            )
        return total

    return _nsum_two_prec(depth3, digits, str(idx))


def eval_t(parts: Sequence[int], digits: int = 24) -> BigReal:
    """Multiple t value: sum over 0<n_1<...<n_d of prod (2n_i - 1)^{-k_i}.

    Direct odd-denominator summation (depth <= 3), independent of both the
    engine and the identities modules; inner partials use Hurwitz zeta and
    digamma closed forms.
    """
    parts = [int(k) for k in parts]
    if not parts or any(k < 1 for k in parts):
        raise ValueError("t parts must be positive integers")
    if parts[-1] < 2:
        raise ValueError("last t part must be >= 2 for convergence")
    d = len(parts)
    if d > 3:
        raise ValueError("eval_t only supports depth <= 3")

    def lam(a):
        """lam(M) = sum_{m<=M} (2m-1)^{-a} in closed form."""
        if a == 1:
            psi_half = mpmath.digamma(mpmath.mpf(0.5))

            def l1(M):
                return (mpmath.digamma(M + mpmath.mpf(0.5)) - psi_half) / 2

            return l1
        z_half = mpmath.zeta(a, mpmath.mpf(0.5))

        def la(M):
            return (z_half - mpmath.zeta(a, M + mpmath.mpf(0.5))) / 2**a

        return la

    if d == 1:
        (a,) = parts

        def depth1():
            return mpmath.zeta(a, mpmath.mpf(0.5)) / 2**a

        return _nsum_two_prec(depth1, digits, f"t{tuple(parts)}")

    if d == 2:
        a, b = parts

        def depth2():
            la = lam(a)
            return _piece_sum(
                lambda n: la(n - 1) / mpmath.mpf(2 * n - 1) ** b, 1, a == 1
            )

        return _nsum_two_prec(depth2, digits, f"t{tuple(parts)}")

    a, b, c = parts

    # middle-variable orientation: inner partial sum and outer tail are both
    # closed forms, leaving a single smooth series over the middle index
    def depth3():
        la = lam(a)

        def f(m):
            outer = mpmath.zeta(c, m + mpmath.mpf(0.5)) / 2**c
            return la(m - 1) * outer / mpmath.mpf(2 * m - 1) ** b

        return _piece_sum(f, 1, a == 1)

    return _nsum_two_prec(depth3, digits, f"t{tuple(parts)}")
