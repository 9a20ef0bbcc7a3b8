import json
from fractions import Fraction
from math import comb

import pytest

from mzvkit import blocklie as blk
from mzvkit.blocklie import (
    EtaDecomp,
    build_Vn,
    build_W_plus,
    cusp_dim,
    dims_check,
    eta_decompose,
    golden_record,
    kernel_period_map,
    pairing_functional,
    project_Pe,
)
from mzvkit.exactalg import MultiPoly, bernoulli

F = Fraction


def mp3(terms):
    return MultiPoly(3, {e: F(c) for e, c in terms.items()})


def mp2(terms):
    return MultiPoly(2, {e: F(c) for e, c in terms.items()})


def even_parts(space):
    """Nonzero totally even projections of a canonical basis."""
    return [p for p in (project_Pe(b) for b in space.basis) if p.terms]


# ---------------------------------------------------------------------------
# exact elimination helpers
# ---------------------------------------------------------------------------

def test_rref_and_nullspace_small():
    red, pivots = blk._rref([[F(2), F(4)], [F(1), F(2)]])
    assert red == [[F(1), F(2)]]
    assert pivots == [0]
    assert blk._nullspace([[F(1), F(2)]], 2) == [[F(-2), F(1)]]
    assert blk._rank([[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]) == 2
    assert blk._in_row_span([[F(1), F(2)]], [F(3), F(6)])
    assert not blk._in_row_span([[F(1), F(2)]], [F(1), F(0)])


# ---------------------------------------------------------------------------
# the constrained polynomial spaces
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "n,dim_v", [(1, 0), (2, 0), (3, 2), (4, 2), (5, 3), (6, 4), (7, 5), (8, 5)]
)
def test_build_Vn_dimensions(n, dim_v):
    assert build_Vn(n).dim == dim_v


def test_v3_canonical_basis():
    b0 = mp3(
        {
            (5, 1, 0): 1,
            (5, 0, 1): -1,
            (3, 2, 1): F(3, 2),
            (3, 1, 2): F(-3, 2),
            (2, 3, 1): F(-3, 2),
            (2, 1, 3): F(3, 2),
            (1, 5, 0): -1,
            (1, 3, 2): F(3, 2),
            (1, 2, 3): F(-3, 2),
            (1, 0, 5): 1,
            (0, 5, 1): 1,
            (0, 1, 5): -1,
        }
    )
    b1 = mp3(
        {
            (4, 2, 0): 1,
            (4, 0, 2): -1,
            (2, 4, 0): -1,
            (2, 0, 4): 1,
            (0, 4, 2): 1,
            (0, 2, 4): -1,
        }
    )
    assert build_Vn(3).basis == [b0, b1]


@pytest.mark.parametrize("n", range(3, 7))
def test_basis_satisfies_defining_constraints(n):
    zero3 = MultiPoly(3)
    for b in build_Vn(n).basis:
        assert blk._cyc(b) == b
        assert b + blk._rev(b) == zero3
        assert not blk._boundary_defect(b).terms
        assert not blk._quartic_defect(b).terms


@pytest.mark.parametrize("n", range(1, 7))
def test_span_route_equals_differential_route(n):
    assert build_Vn(n, "span").basis == build_Vn(n, "differential").basis


def test_build_Vn_validation():
    with pytest.raises(ValueError):
        build_Vn(0)
    with pytest.raises(ValueError):
        build_Vn(3, "bogus")


def test_vspace_contains():
    v3 = build_Vn(3)
    b0, b1 = v3.basis
    assert v3.contains(MultiPoly(3))
    assert v3.contains(b0) and v3.contains(b1)
    assert v3.contains(2 * b0 - 3 * b1)
    assert not v3.contains(MultiPoly.monomial((6, 0, 0)))
    assert not v3.contains(MultiPoly.monomial((4, 0, 0)))  # wrong degree
    assert not v3.contains(MultiPoly.monomial((3, 3)))  # wrong variable count


# ---------------------------------------------------------------------------
# the totally even projector
# ---------------------------------------------------------------------------

def test_project_Pe_on_monomials():
    assert project_Pe(MultiPoly.monomial((2, 2, 2))) == MultiPoly.monomial((2, 2, 2))
    assert project_Pe(MultiPoly.monomial((3, 1, 2))) == MultiPoly(3)
    mixed = mp3({(4, 2, 0): 5, (3, 2, 1): 7, (0, 0, 6): -1})
    assert project_Pe(mixed) == mp3({(4, 2, 0): 5, (0, 0, 6): -1})
    assert project_Pe(project_Pe(mixed)) == project_Pe(mixed)


@pytest.mark.parametrize("n", range(3, 7))
def test_projector_closes_on_Vn(n):
    space = build_Vn(n)
    for b in space.basis:
        assert space.contains(project_Pe(b))


@pytest.mark.parametrize("n", range(1, 9))
def test_dims_check_floor_formulas(n):
    assert dims_check(n) == (n // 3, (n - 1) // 2, True)


# ---------------------------------------------------------------------------
# eta-coordinates
# ---------------------------------------------------------------------------

def test_eta_zero_polynomial():
    ed = eta_decompose(MultiPoly(3))
    assert (ed.n, ed.eta, ed.bridge_ok) == (0, {}, True)


def test_eta_input_validation():
    with pytest.raises(ValueError):
        eta_decompose(MultiPoly.monomial((2, 2)))  # two variables
    with pytest.raises(ValueError):
        eta_decompose(mp3({(2, 0, 0): 1, (4, 0, 0): 1}))  # inhomogeneous
    with pytest.raises(ValueError):
        eta_decompose(MultiPoly.monomial((1, 1, 0)))  # odd exponents
    with pytest.raises(ValueError):
        eta_decompose(MultiPoly.monomial((3, 0, 0)))  # odd degree


def test_eta_on_v3_even_vector():
    (f,) = even_parts(build_Vn(3))
    ed = eta_decompose(f)
    assert ed.n == 3
    assert ed.bridge_ok
    nonzero = {p: c for p, c in ed.eta.items() if c}
    assert nonzero == {
        (1, 5): F(1, 10),
        (2, 4): F(1, 4),
        (4, 2): F(-1, 4),
        (5, 1): F(-1, 10),
    }
    # bridge: even entries are a quarter of the x1^i x3^j coefficients
    assert ed[(2, 4)] == F(1, 4) * f.coeff((2, 0, 4))
    assert ed[(4, 2)] == F(1, 4) * f.coeff((4, 0, 2))


@pytest.mark.parametrize("n", range(3, 7))
def test_eta_solves_with_bridge_on_even_image(n):
    for f in even_parts(build_Vn(n)):
        ed = eta_decompose(f)
        assert ed.n == n
        assert ed.bridge_ok
        assert all(ed.eta[(j, i)] == -c for (i, j), c in ed.eta.items())


@pytest.mark.parametrize("n", range(3, 7))
def test_eta_bernoulli_recursion_holds_on_solutions(n):
    # re-check the odd rows of the solved system by direct summation
    for f in even_parts(build_Vn(n)):
        ed = eta_decompose(f)
        for a in range(n):
            b = n - a
            lhs = (2 * a + 1) * ed[(2 * a + 1, 2 * b - 1)]
            rhs = 2 * sum(
                comb(2 * a + 2 * s, 2 * a)
                * bernoulli(2 * s)
                * ed[(2 * a + 2 * s, 2 * b - 2 * s)]
                for s in range(b + 1)
            )
            assert lhs == rhs


def test_eta_alternating_variant_is_inconsistent():
    # flipping in (-1)^s makes the augmented system unsolvable on the
    # very vectors the plain recursion handles
    for n in (3, 6):
        for f in even_parts(build_Vn(n)):
            with pytest.raises(ValueError):
                eta_decompose(f, alternating=True)


def test_eta_decomp_antisymmetry_validation():
    with pytest.raises(ValueError):
        EtaDecomp(1, {(1, 1): F(1)}, True)
    with pytest.raises(ValueError):
        EtaDecomp(1, {(2, 0): F(1)}, True)
    ed = EtaDecomp(1, {(2, 0): F(1), (0, 2): F(-1)}, True)
    assert ed[(2, 0)] == F(1)


# ---------------------------------------------------------------------------
# even period polynomials and cusp dimensions
# ---------------------------------------------------------------------------

def test_w_plus_degree_10_pin():
    w = build_W_plus(10)
    assert w.n == 5
    assert w.basis == [mp2({(8, 2): 1, (6, 4): -3, (4, 6): 3, (2, 8): -1})]


def test_w_plus_degree_14_pin():
    w = build_W_plus(14)
    assert w.basis == [
        mp2(
            {
                (12, 2): 1,
                (10, 4): F(-7, 2),
                (8, 6): F(11, 2),
                (6, 8): F(-11, 2),
                (4, 10): F(7, 2),
                (2, 12): -1,
            }
        )
    ]
    doubled = mp2(
        {(12, 2): 2, (10, 4): -7, (8, 6): 11, (6, 8): -11, (4, 10): 7, (2, 12): -2}
    )
    assert w.contains(doubled)


@pytest.mark.parametrize("degree", range(4, 32, 2))
def test_w_plus_dimension_matches_cusp_forms(degree):
    assert build_W_plus(degree).dim == cusp_dim(degree + 2)


@pytest.mark.parametrize("degree", (10, 14, 22))
def test_w_plus_basis_satisfies_defining_relations(degree):
    zero2 = MultiPoly(2)
    y, x = MultiPoly.var(1, 2), MultiPoly.var(0, 2)
    for p in build_W_plus(degree).basis:
        assert blk._three_term(p) == zero2
        assert p + p.substitute([y, x]) == zero2
        assert p.coeff((degree, 0)) == 0 and p.coeff((0, degree)) == 0
        assert all(i % 2 == 0 and j % 2 == 0 for i, j in p.terms)


def test_w_plus_validation():
    with pytest.raises(ValueError):
        build_W_plus(0)
    with pytest.raises(ValueError):
        build_W_plus(7)
    assert build_W_plus(2).dim == 0


def test_cusp_dim_classical_table():
    table = {4: 0, 6: 0, 8: 0, 10: 0, 12: 1, 14: 0, 16: 1, 18: 1,
             20: 1, 22: 1, 24: 2, 26: 1, 28: 2}
    assert {k: cusp_dim(k) for k in table} == table
    with pytest.raises(ValueError):
        cusp_dim(5)
    with pytest.raises(ValueError):
        cusp_dim(2)


# ---------------------------------------------------------------------------
# the wedge-pair bracket matrix
# ---------------------------------------------------------------------------

def test_kernel_period_n5():
    cert = kernel_period_map(5)
    assert cert.pairs == [(1, 4), (2, 3)]
    assert len(cert.matrix) == 11 and len(cert.matrix[0]) == 2
    assert cert.kernel == [[F(1), F(-3)]]
    assert (cert.rank, cert.dim_w, cert.cusp, cert.ok) == (1, 1, 1, True)
    # the kernel vector assembles to the canonical degree-10 period poly
    q14 = mp2({(2, 8): 1, (8, 2): -1})
    q23 = mp2({(4, 6): 1, (6, 4): -1})
    assert build_W_plus(10).contains(q14 - 3 * q23)


def test_kernel_period_n7():
    cert = kernel_period_map(7)
    assert cert.pairs == [(1, 6), (2, 5), (3, 4)]
    assert cert.kernel == [[F(1), F(-7, 2), F(11, 2)]]
    assert (cert.rank, cert.ok) == (2, True)


@pytest.mark.parametrize("n", range(2, 9))
def test_kernel_period_sweep(n):
    cert = kernel_period_map(n)
    assert cert.ok
    assert cert.rank == n // 3
    assert len(cert.kernel) == cert.dim_w == cert.cusp == cusp_dim(2 * n + 2)


def test_kernel_period_vacuous_and_validation():
    assert kernel_period_map(2).pairs == []
    with pytest.raises(ValueError):
        kernel_period_map(1)


# ---------------------------------------------------------------------------
# the coefficient-extraction functional
# ---------------------------------------------------------------------------

def test_pairing_direct_table():
    f = pairing_functional(1, 2)
    assert f.table == {(4, 0, 2): F(1, 4)}
    assert f(MultiPoly.monomial((4, 0, 2))) == F(1, 4)
    assert f(MultiPoly.monomial((2, 0, 4))) == 0
    assert f(mp3({(4, 0, 2): 8, (2, 2, 2): 100})) == 2


def test_pairing_block_table_pins():
    # one two-blocks word per s; each contributes a +/- delta pair
    assert pairing_functional(1, 2).block_table == {
        (3, 0, 3): F(-1, 4),
        (4, 0, 2): F(1, 4),
    }
    assert pairing_functional(0, 2).block_table == {
        (1, 0, 5): F(-1, 4),
        (2, 0, 4): F(1, 4),
        (3, 0, 3): F(-1, 4),
        (4, 0, 2): F(1, 4),
        (5, 0, 1): F(-1, 4),
        (6, 0, 0): F(1, 4),
    }


def test_pairing_telescopes_for_all_small_parameters():
    for n in range(7):
        for a in range(n // 2 + 1):
            assert pairing_functional(a, n).telescopes


def test_pairing_routes_agree_only_up_to_reversal_symmetric_terms():
    f = pairing_functional(1, 2)
    # x1^3 x3^3 is fixed by reversal: the routes are allowed to differ there
    sym = MultiPoly.monomial((3, 0, 3))
    assert f(sym) == 0 and f.from_blocks(sym) == F(-1, 4)
    anti = mp3({(4, 0, 2): 1, (2, 0, 4): -1})
    assert f(anti) == f.from_blocks(anti) == F(1, 4)


@pytest.mark.parametrize(
    "n,a,value",
    [(2, 0, 0), (2, 1, F(-1, 4)), (3, 0, 0), (3, 1, F(-1, 4)),
     (4, 0, 0), (4, 1, F(-1, 4)), (4, 2, F(-7, 18))],
)
def test_pairing_extracts_eta_entry(n, a, value):
    (f,) = even_parts(build_Vn(n + 1))
    func = pairing_functional(a, n)
    assert func(f) == func.from_blocks(f) == value
    assert value == eta_decompose(f)[(2 * n - 2 * a + 2, 2 * a)]


def test_pairing_validation():
    for a, n in ((1, 1), (-1, 0), (2, 3)):
        with pytest.raises(ValueError):
            pairing_functional(a, n)


# ---------------------------------------------------------------------------
# golden records
# ---------------------------------------------------------------------------

def test_golden_record_shape():
    rec = golden_record(3)
    assert rec["n"] == 3
    assert rec["dims"] == {"V": 2, "im_Pe": 1, "ker_Pe": 1, "W_plus": 0, "cusp": 0}
    assert rec["dims_ok"] and rec["kernel_period_ok"]
    assert rec["V_basis"] == build_Vn(3).as_json()["basis"]
    json.dumps(rec)  # must be serializable as-is

    rec1 = golden_record(1)
    assert "kernel_period_ok" not in rec1
    assert rec1["dims"] == {"V": 0, "im_Pe": 0, "ker_Pe": 0, "W_plus": 0, "cusp": 0}
    assert rec1["V_basis"] == [] and rec1["W_basis"] == []


def test_golden_record_n5_has_period_content():
    rec = golden_record(5)
    assert rec["dims"] == {"V": 3, "im_Pe": 1, "ker_Pe": 2, "W_plus": 1, "cusp": 1}
    assert rec["W_basis"] == [{"8,2": "1", "6,4": "-3", "4,6": "3", "2,8": "-1"}]
    assert rec["kernel_period_ok"]
