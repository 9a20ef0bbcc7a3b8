import time
from fractions import Fraction

from mzvkit.blocklie import (
    build_Vn, project_Pe, dims_check, eta_decompose, build_W_plus,
    cusp_dim, kernel_period_map, pairing_functional, _canonical_polys,
    _monomials, _vec, _rank,
)
from mzvkit.exactalg import MultiPoly

print("== dims n=1..8 ==")
for n in range(1, 9):
    t0 = time.time()
    di, dk, ok = dims_check(n)
    V = build_Vn(n)
    print(f"n={n}: dimV={V.dim} im={di} ker={dk} ok={ok} expect=({n//3},{(n-1)//2})  [{time.time()-t0:.2f}s]")

print("== span vs differential n=1..6 ==")
for n in range(1, 7):
    a = build_Vn(n, "span").basis
    b = build_Vn(n, "differential").basis
    print(f"n={n}: equal={a == b} ({len(a)} vs {len(b)})")

print("== P_e closure n=3..6 ==")
for n in range(3, 7):
    V = build_Vn(n)
    ok = all(V.contains(project_Pe(f)) and V.contains(f - project_Pe(f)) for f in V.basis)
    print(f"n={n}: closure={ok}")

print("== eta recursion adjudication ==")
for n in range(3, 7):
    V = build_Vn(n)
    monos = _monomials(3, 2 * n)
    im_basis = _canonical_polys([project_Pe(b) for b in V.basis], monos, 3)
    for k, f in enumerate(im_basis):
        for alt in (False, True):
            try:
                ed = eta_decompose(f, alternating=alt)
                res = f"solvable bridge={ed.bridge_ok}"
            except ValueError as e:
                res = f"INCONSISTENT"
            print(f"  n={n} vec{k} alternating={alt}: {res}")

print("== zero poly ==")
ed = eta_decompose(MultiPoly(3))
print("zero:", ed.n, ed.eta, ed.bridge_ok)

print("== W+ dims vs cusp, n<=15 ==")
for n in range(2, 16):
    w = build_W_plus(2 * n)
    print(f"2n={2*n}: dimW={w.dim} cusp={cusp_dim(2*n+2)} match={w.dim == cusp_dim(2*n+2)}")

print("== W10 basis pin ==")
w = build_W_plus(10)
print(w.basis)

print("== kernel-period n=2..8 ==")
for n in range(2, 9):
    c = kernel_period_map(n)
    print(f"n={n}: pairs={len(c.pairs)} rank={c.rank} ker={len(c.kernel)} dimW={c.dim_w} cusp={c.cusp} ok={c.ok}")

print("== pairing functional ==")
for n in range(2, 6):
    for a in range(0, n // 2 + 1):
        pf = pairing_functional(a, n)
        print(f"a={a} n={n}: telescopes={pf.telescopes}")

print("== remark chain: functional == eta entry on im P_e of V_{n+1} ==")
for n in range(2, 5):
    V = build_Vn(n + 1)
    monos = _monomials(3, 2 * (n + 1))
    im_basis = _canonical_polys([project_Pe(b) for b in V.basis], monos, 3)
    for a in range(0, n // 2 + 1):
        pf = pairing_functional(a, n)
        for k, f in enumerate(im_basis):
            ed = eta_decompose(f)
            lhs = pf(f)
            rhs = ed.eta[(2 * n - 2 * a + 2, 2 * a)]
            print(f"  n={n} a={a} vec{k}: F(f)={lhs} eta={rhs} equal={lhs == rhs}")

print("== timing big n ==")
for n in (10, 12, 14):
    t0 = time.time()
    di, dk, ok = dims_check(n)
    print(f"n={n}: ({di},{dk},{ok}) in {time.time()-t0:.1f}s")
