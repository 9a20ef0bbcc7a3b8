"""Exact linear algebra tying block-degree-2 double-zeta symbols to period polynomials.

``build_Vn`` constructs, for half-degree n, the space of homogeneous
degree-2n polynomials in x1, x2, x3 that are invariant under the cyclic
rotation of the variables, antisymmetric under reversal (x1 <-> x3),
satisfy the boundary constraint tying the odd-in-x3 part of f(0, y, z) to
f(-y, y, z) - f(y, -z, z), and lie in the span of the four product
families (x1 +- x2)^i (x2 +- x3)^j.  The span condition is normative; an
equivalent differential rendering -- the product of the four directional
derivatives annihilating those families -- can be selected with
``rel3="differential"`` as an independent cross-check.

``project_Pe`` keeps the totally even monomials; restricted to V_n it is a
projector whose image and kernel have dimensions floor(n/3) and
floor((n-1)/2) (``dims_check``).  ``eta_decompose`` rewrites a totally
even element in antisymmetric eta-coordinates obeying a Bernoulli-weighted
recursion between the odd and even rows.  ``build_W_plus`` computes the
space of even period polynomials of a given degree, ``cusp_dim`` the
matching cusp-form dimension, and ``kernel_period_map`` certifies that the
kernel of the wedge-pair bracket matrix is a copy of that space.
``pairing_functional`` is the coefficient-extraction functional on
V_{n+1}, built both directly and through the block-decomposition pairing.

Everything is exact: coefficients are ``fractions.Fraction`` throughout,
and all ranks and nullspaces come from Gaussian elimination over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

from .exactalg import MultiPoly, bernoulli
from .mzvword import SignedIndex, block_decomposition, index_to_word

__all__ = [
    "VSpace",
    "EtaDecomp",
    "PeriodSpace",
    "PairingFunctional",
    "KernelPeriodCert",
    "build_Vn",
    "project_Pe",
    "dims_check",
    "eta_decompose",
    "build_W_plus",
    "cusp_dim",
    "kernel_period_map",
    "pairing_functional",
    "golden_record",
]

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# dense exact linear algebra
# ---------------------------------------------------------------------------

def _rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    mat = [list(map(Fraction, r)) for r in rows if any(r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        prow = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                fac = mat[i][c]
                mat[i] = [a - fac * b for a, b in zip(mat[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(_rref(rows)[0])


def _nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Canonical nullspace basis (one vector per free column, that entry 1)."""
    red, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [_ZERO] * ncols
        v[fc] = Fraction(1)
        for prow, pc in zip(red, pivots):
            v[pc] = -prow[fc]
        out.append(v)
    return out


def _in_row_span(rows: List[List[Fraction]], vec: List[Fraction]) -> bool:
    if not any(vec):
        return True
    base = _rank(rows)
    return _rank(rows + [vec]) == base


# ---------------------------------------------------------------------------
# monomial bookkeeping
# ---------------------------------------------------------------------------

def _monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    """All exponent vectors of the given total degree, graded-lex descending."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        out.extend((e,) + rest for rest in _monomials(nvars - 1, degree - e))
    return out


def _vec(p: MultiPoly, monos: Sequence[Tuple[int, ...]]) -> List[Fraction]:
    return [p.terms.get(m, _ZERO) for m in monos]


def _poly(vec: Sequence[Fraction], monos: Sequence[Tuple[int, ...]], nvars: int) -> MultiPoly:
    return MultiPoly(nvars, {m: c for m, c in zip(monos, vec) if c})


def _canonical_polys(
    polys: Sequence[MultiPoly], monos: Sequence[Tuple[int, ...]], nvars: int
) -> List[MultiPoly]:
    """Row-reduce a spanning set to the canonical basis (leading coefficient 1)."""
    red, _ = _rref([_vec(p, monos) for p in polys])
    return [_poly(row, monos, nvars) for row in red]


def _poly_json(p: MultiPoly) -> Dict[str, str]:
    return {
        ",".join(map(str, e)): str(c)
        for e, c in sorted(p.terms.items(), reverse=True)
    }


# ---------------------------------------------------------------------------
# the V_n spaces
# ---------------------------------------------------------------------------

_X1, _X2, _X3 = (MultiPoly.var(i, 3) for i in range(3))


def _cyc(f: MultiPoly) -> MultiPoly:
    return f.substitute([_X2, _X3, _X1])


def _rev(f: MultiPoly) -> MultiPoly:
    return f.substitute([_X3, _X2, _X1])


def _boundary_defect(f: MultiPoly) -> MultiPoly:
    """Twice the failure of the boundary constraint, in Q[y, z].

    The constraint says the odd-in-z part of f(0, y, z) equals
    f(-y, y, z) - f(y, -z, z); the defect is integer-valued on integer input.
    """
    y, z = MultiPoly.var(0, 2), MultiPoly.var(1, 2)
    zero = MultiPoly.const(0, 2)
    return (
        f.substitute([zero, y, z])
        - f.substitute([zero, y, -z])
        - 2 * f.substitute([-y, y, z])
        + 2 * f.substitute([y, -z, z])
    )


def _directional(f: MultiPoly, a: int, b: int, c: int) -> MultiPoly:
    return a * f.diff(0) + b * f.diff(1) + c * f.diff(2)


def _quartic_defect(f: MultiPoly) -> MultiPoly:
    """Composite of the four directional derivatives, one per product family.

    Each family (x1 +- x2)^i (x2 +- x3)^j is constant along one of the
    directions (1,1,1), (-1,1,1), (1,1,-1), (1,-1,1), so the composite
    annihilates their span.
    """
    out = f
    for a, b, c in ((1, 1, 1), (-1, 1, 1), (1, 1, -1), (1, -1, 1)):
        out = _directional(out, a, b, c)
    return out


def _span_generators(n: int) -> List[MultiPoly]:
    gens = []
    for i in range(2 * n + 1):
        j = 2 * n - i
        for s in (1, -1):
            for t in (1, -1):
                gens.append((_X1 + s * _X2) ** i * (_X2 + t * _X3) ** j)
    return gens


@dataclass
class VSpace:
    """A canonical basis for the degree-2n constrained polynomial space."""

    n: int
    basis: List[MultiPoly]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, p: MultiPoly) -> bool:
        if not p.terms:
            return True
        if p.nvars != 3 or not p.is_homogeneous(2 * self.n):
            return False
        monos = _monomials(3, 2 * self.n)
        rows = [_vec(b, monos) for b in self.basis]
        return _in_row_span(rows, _vec(p, monos))

    def as_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "basis": [_poly_json(b) for b in self.basis]}


@lru_cache(maxsize=None)
def build_Vn(n: int, rel3: str = "span") -> VSpace:
    """Cut out the constrained space of homogeneous degree-2n polynomials.

    ``rel3`` chooses how membership in the four product families is
    imposed: ``"span"`` (normative) parametrizes candidates by the family
    coefficients; ``"differential"`` works in the full monomial space and
    adds the quartic directional constraint.  Both give the same canonical
    basis.
    """
    if n < 1:
        raise ValueError("half-degree n must be >= 1")
    monos = _monomials(3, 2 * n)
    monos2 = _monomials(2, 2 * n)
    if rel3 == "span":
        gens = _span_generators(n)
        cyc_img = [g - _cyc(g) for g in gens]
        rev_img = [g + _rev(g) for g in gens]
        bnd_img = [_boundary_defect(g) for g in gens]
        rows = []
        for imgs, mset in ((cyc_img, monos), (rev_img, monos), (bnd_img, monos2)):
            for m in mset:
                row = [img.terms.get(m, _ZERO) for img in imgs]
                if any(row):
                    rows.append(row)
        polys = []
        for coeffs in _nullspace(rows, len(gens)):
            acc = MultiPoly(3)
            for c, g in zip(coeffs, gens):
                if c:
                    acc = acc + c * g
            polys.append(acc)
    elif rel3 == "differential":
        monos_low = _monomials(3, 2 * n - 4) if 2 * n >= 4 else []
        cols = []
        for m in monos:
            p = MultiPoly.monomial(m)
            cols.append(
                (p - _cyc(p), p + _rev(p), _boundary_defect(p), _quartic_defect(p))
            )
        rows = []
        for which, mset in ((0, monos), (1, monos), (2, monos2), (3, monos_low)):
            for m in mset:
                row = [col[which].terms.get(m, _ZERO) for col in cols]
                if any(row):
                    rows.append(row)
        polys = [_poly(v, monos, 3) for v in _nullspace(rows, len(monos))]
    else:
        raise ValueError(f"unknown rel3 mode {rel3!r}")
    return VSpace(n, _canonical_polys(polys, monos, 3))


def project_Pe(f: MultiPoly) -> MultiPoly:
    """Keep exactly the monomials in which every variable appears evenly."""
    return MultiPoly(
        f.nvars, {e: c for e, c in f.terms.items() if all(x % 2 == 0 for x in e)}
    )


def dims_check(n: int) -> Tuple[int, int, bool]:
    """(dim im P_e, dim ker P_e, both match floor(n/3) and floor((n-1)/2))."""
    space = build_Vn(n)
    monos = _monomials(3, 2 * n)
    dim_im = _rank([_vec(project_Pe(b), monos) for b in space.basis])
    dim_ker = space.dim - dim_im
    return dim_im, dim_ker, dim_im == n // 3 and dim_ker == (n - 1) // 2


# ---------------------------------------------------------------------------
# eta-coordinates on the totally even part
# ---------------------------------------------------------------------------

@dataclass
class EtaDecomp:
    """Antisymmetric eta-coordinates of a totally even element.

    ``eta`` maps (i, j) with i + j = 2n to the coefficient of the four-term
    generator built from (x1 -+ x2)^i (x2 -+ x3)^j; ``bridge_ok`` records
    that the even entries match a quarter of the x1^{2i} x3^{2j}
    coefficients of the source polynomial.
    """

    n: int
    eta: Dict[Tuple[int, int], Fraction]
    bridge_ok: bool

    def __post_init__(self):
        for (i, j), v in self.eta.items():
            if self.eta.get((j, i), _ZERO) != -v:
                raise ValueError(f"eta not antisymmetric at {(i, j)}")

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.eta[key]


def _eta_generator(i: int, j: int) -> MultiPoly:
    s = (-1) ** i
    um, up = _X1 - _X2, _X1 + _X2
    vm, vp = _X2 - _X3, _X2 + _X3
    return um**i * vm**j + s * (up**i * vm**j) + um**i * vp**j + s * (up**i * vp**j)


def _eta_recursion_rows(
    pairs: Sequence[Tuple[int, int]], half: int, alternating: bool
) -> List[List[Fraction]]:
    """One row per odd pair (2a+1, 2b-1): the Bernoulli recursion.

    (2a+1) eta_{2a+1,2b-1} = 2 sum_{s>=0} C(2a+2s, 2a) B_{2s} eta_{2a+2s,2b-2s};
    ``alternating`` inserts (-1)^s into the sum (kept only to demonstrate
    that this variant is inconsistent with the decomposition).
    """
    idx = {p: k for k, p in enumerate(pairs)}
    rows = []
    for a in range(half):
        b = half - a
        row = [_ZERO] * len(pairs)
        row[idx[(2 * a + 1, 2 * b - 1)]] = Fraction(2 * a + 1)
        for s in range(b + 1):
            coef = 2 * comb(2 * a + 2 * s, 2 * a) * bernoulli(2 * s)
            if alternating:
                coef *= (-1) ** s
            row[idx[(2 * a + 2 * s, 2 * b - 2 * s)]] -= coef
        rows.append(row)
    return rows


def eta_decompose(f: MultiPoly, alternating: bool = False) -> EtaDecomp:
    """Solve for eta-coordinates of a totally even degree-2n polynomial.

    The linear system couples the generator decomposition itself with the
    antisymmetry constraints and the Bernoulli recursion; inconsistency of
    the augmented system is an error (it would mean the input is not in
    the totally even part, or the spanning set is deficient), never
    silently repaired.
    """
    if f.nvars != 3:
        raise ValueError("expected a polynomial in 3 variables")
    if not f.terms:
        return EtaDecomp(0, {}, True)
    deg = f.total_degree()
    if deg % 2 or not f.is_homogeneous(deg) or f != project_Pe(f):
        raise ValueError("expected a homogeneous, totally even polynomial")
    half = deg // 2
    pairs = [(i, deg - i) for i in range(deg + 1)]
    idx = {p: k for k, p in enumerate(pairs)}
    monos = _monomials(3, deg)
    gen_vecs = [_vec(_eta_generator(i, j), monos) for i, j in pairs]
    fvec = _vec(f, monos)

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for r, m in enumerate(monos):
        row = [gv[r] for gv in gen_vecs]
        if any(row) or fvec[r]:
            rows.append(row)
            rhs.append(fvec[r])
    for i, j in pairs:
        if i <= j:
            row = [_ZERO] * len(pairs)
            row[idx[(i, j)]] += 1
            row[idx[(j, i)]] += 1
            rows.append(row)
            rhs.append(_ZERO)
    for row in _eta_recursion_rows(pairs, half, alternating):
        rows.append(row)
        rhs.append(_ZERO)

    red, pivots = _rref([row + [b] for row, b in zip(rows, rhs)])
    if len(pairs) in pivots:
        raise ValueError("eta decomposition: augmented system is inconsistent")
    sol = [_ZERO] * len(pairs)
    for prow, pc in zip(red, pivots):
        sol[pc] = prow[-1]
    eta = {p: sol[k] for k, p in enumerate(pairs)}
    bridge = all(
        eta[(i, j)] == Fraction(1, 4) * f.coeff((i, 0, j))
        for i, j in pairs
        if i % 2 == 0
    )
    return EtaDecomp(half, eta, bridge)


# ---------------------------------------------------------------------------
# even period polynomials and cusp-form dimensions
# ---------------------------------------------------------------------------

@dataclass
class PeriodSpace:
    """Canonical basis of the even period polynomials of degree 2n."""

    n: int
    basis: List[MultiPoly]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, p: MultiPoly) -> bool:
        if not p.terms:
            return True
        if p.nvars != 2 or not p.is_homogeneous(2 * self.n):
            return False
        monos = _monomials(2, 2 * self.n)
        return _in_row_span([_vec(b, monos) for b in self.basis], _vec(p, monos))

    def as_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "basis": [_poly_json(b) for b in self.basis]}


def _three_term(p: MultiPoly) -> MultiPoly:
    """Defect of the hairpin relation p(x, y) = p(x, x+y) + p(x+y, y).

    For polynomials even in each variable this is the classical three-term
    period relation (rewrite p(X, Y) + p(X-Y, X) + p(Y, X-Y) = 0 through
    the antisymmetry p(x, y) = -p(y, x) and substitute X = x+y, Y = y).
    """
    x, y = MultiPoly.var(0, 2), MultiPoly.var(1, 2)
    return p - p.substitute([x, x + y]) - p.substitute([x + y, y])


@lru_cache(maxsize=None)
def build_W_plus(degree: int) -> PeriodSpace:
    """Even period polynomials: homogeneous of the given even degree, even
    in each variable, vanishing on both axes, antisymmetric under the swap
    of variables, and killed by the three-term relation."""
    if degree < 2 or degree % 2:
        raise ValueError("degree must be a positive even integer")
    half = degree // 2
    emonos = [(2 * i, degree - 2 * i) for i in range(half, -1, -1)]
    cols = [MultiPoly.monomial(m) for m in emonos]
    rows: List[List[Fraction]] = []
    full = _monomials(2, degree)
    three = [_three_term(p) for p in cols]
    for m in full:
        row = [t.terms.get(m, _ZERO) for t in three]
        if any(row):
            rows.append(row)
    swap = [p + p.substitute([MultiPoly.var(1, 2), MultiPoly.var(0, 2)]) for p in cols]
    for m in emonos:
        row = [s.terms.get(m, _ZERO) for s in swap]
        if any(row):
            rows.append(row)
    for axis_mono in ((degree, 0), (0, degree)):
        rows.append([Fraction(1) if m == axis_mono else _ZERO for m in emonos])
    basis = [_poly(v, emonos, 2) for v in _nullspace(rows, len(emonos))]
    return PeriodSpace(half, _canonical_polys(basis, _monomials(2, degree), 2))


def cusp_dim(weight: int) -> int:
    """Dimension of the weight-k cusp forms for the full modular group.

    Case formula in n = (weight - 2) / 2 by n mod 6, with the fractional
    cases read as floors; validated against the classical table in tests.
    """
    if weight % 2 or weight < 4:
        raise ValueError("weight must be an even integer >= 4")
    n = (weight - 2) // 2
    if n % 6 == 0:
        dim = n // 6 - 1
    elif n % 6 == 5:
        dim = n // 6 + 1
    else:
        dim = n // 6
    assert (n - 1) // 2 - dim == n // 3
    return dim


# ---------------------------------------------------------------------------
# the wedge-pair bracket matrix and its kernel
# ---------------------------------------------------------------------------

@dataclass
class KernelPeriodCert:
    """Exact certificate that ker(bracket matrix) = even period polynomials.

    ``matrix`` has one row per degree-2n monomial in (X, Y) and one column
    per wedge pair (k, l), k < l, k + l = n; ``kernel`` is its canonical
    nullspace basis.  ``ok`` requires: each kernel vector assembles to a
    period polynomial and vice versa; the kernel dimension equals both the
    period-space and cusp-form dimensions; and the rank equals the image
    dimension of the even projector.
    """

    n: int
    pairs: List[Tuple[int, int]]
    matrix: List[List[Fraction]]
    kernel: List[List[Fraction]]
    rank: int
    dim_w: int
    cusp: int
    ok: bool


def kernel_period_map(n: int) -> KernelPeriodCert:
    if n < 2:
        raise ValueError("need n >= 2")
    pairs = [(k, n - k) for k in range(1, (n + 1) // 2)]
    monos = _monomials(2, 2 * n)

    def q_poly(k: int, l: int) -> MultiPoly:
        return MultiPoly.monomial((2 * k, 2 * l)) - MultiPoly.monomial((2 * l, 2 * k))

    images = [_three_term(q_poly(k, l)) for k, l in pairs]
    matrix = [[img.terms.get(m, _ZERO) for img in images] for m in monos]
    kernel, _ = _rref(_nullspace(matrix, len(pairs)))
    rank = len(pairs) - len(kernel)

    wspace = build_W_plus(2 * n)
    csp = cusp_dim(2 * n + 2)

    ok = len(kernel) == wspace.dim == csp
    # kernel vectors assemble to period polynomials...
    for a in kernel:
        poly = MultiPoly(2)
        for c, (k, l) in zip(a, pairs):
            if c:
                poly = poly + c * q_poly(k, l)
        ok = ok and wspace.contains(poly)
    # ...and period polynomials read back as kernel vectors.
    for p in wspace.basis:
        a = [p.coeff((2 * k, 2 * l)) for k, l in pairs]
        rebuilt = MultiPoly(2)
        for c, (k, l) in zip(a, pairs):
            if c:
                rebuilt = rebuilt + c * q_poly(k, l)
        ok = ok and rebuilt == p and not _three_term(p).terms
    # rank matches the even-projector image dimension.
    dim_im, _, dims_ok = dims_check(n)
    ok = ok and dims_ok and rank <= dim_im and rank == dim_im

    return KernelPeriodCert(n, pairs, matrix, kernel, rank, wspace.dim, csp, ok)


# ---------------------------------------------------------------------------
# the coefficient-extraction functional
# ---------------------------------------------------------------------------

@dataclass
class PairingFunctional:
    """Linear functional on degree-(2n+2) polynomials in three variables.

    ``table`` is the direct form: 1/4 at the single monomial
    x1^{2n-2a+2} x3^{2a}.  ``block_table`` is assembled from the block
    decompositions of the words of the two-blocks family, one delta pair
    per member; ``telescopes`` records that the two tables agree on every
    polynomial that is antisymmetric under reversal of the variables.
    """

    a: int
    n: int
    table: Dict[Tuple[int, int, int], Fraction]
    block_table: Dict[Tuple[int, int, int], Fraction]
    telescopes: bool

    def __call__(self, f: MultiPoly) -> Fraction:
        return sum((self.table.get(e, _ZERO) * c for e, c in f.terms.items()), _ZERO)

    def from_blocks(self, f: MultiPoly) -> Fraction:
        return sum(
            (self.block_table.get(e, _ZERO) * c for e, c in f.terms.items()), _ZERO
        )


def pairing_functional(a: int, n: int) -> PairingFunctional:
    if not 0 <= 2 * a <= n:
        raise ValueError(f"need 0 <= 2a <= n, got a={a}, n={n}")
    table = {(2 * n - 2 * a + 2, 0, 2 * a): Fraction(1, 4)}

    block_table: Dict[Tuple[int, int, int], Fraction] = {}
    scale = Fraction((-1) ** n, 4)

    def add(mono: Tuple[int, int, int], val: Fraction) -> None:
        cur = block_table.get(mono, _ZERO) + val
        if cur:
            block_table[mono] = cur
        else:
            block_table.pop(mono, None)

    for s in range(a, n - a + 1):
        sign, word = index_to_word(SignedIndex.of(*([2] * s + [4] + [2] * (n - s))))
        l1, l2, l3 = block_decomposition(word)
        add((l1 - 2, l2 - 1, l3 - 1), scale * sign)
        add((l1 - 1, l2 - 1, l3 - 2), -scale * sign)

    def antisym_value(tab, mono):
        i, j, k = mono
        return tab.get((i, j, k), _ZERO) - tab.get((k, j, i), _ZERO)

    telescopes = all(
        antisym_value(table, m) == antisym_value(block_table, m)
        for m in _monomials(3, 2 * n + 2)
    )
    return PairingFunctional(a, n, table, block_table, telescopes)


# ---------------------------------------------------------------------------
# golden records
# ---------------------------------------------------------------------------

def golden_record(n: int) -> dict:
    """One JSON-ready record per n: dimensions and canonical bases."""
    space = build_Vn(n)
    dim_im, dim_ker, dims_ok = dims_check(n)
    wspace = build_W_plus(2 * n)
    rec = {
        "n": n,
        "dims": {
            "V": space.dim,
            "im_Pe": dim_im,
            "ker_Pe": dim_ker,
            "W_plus": wspace.dim,
            "cusp": cusp_dim(2 * n + 2),
        },
        "dims_ok": dims_ok,
        "V_basis": [_poly_json(b) for b in space.basis],
        "W_basis": [_poly_json(b) for b in wspace.basis],
    }
    if n >= 2:
        rec["kernel_period_ok"] = kernel_period_map(n).ok
    return rec
