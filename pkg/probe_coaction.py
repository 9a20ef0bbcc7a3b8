import itertools
from fractions import Fraction

from mzvkit.coaction import (
    BoundedWord, TensorSum, d_r_word, normalize_left_factor,
    verify_family_Dr, lemma_binomial_sides, verify_lemma_binomial,
    mod_products_sides_2242, verify_mod_products_2242, FAMILIES,
)
from mzvkit.mzvword import Word, SignedIndex, LinComb, index_to_word, interp_expand
from mzvkit.identities import linearize_products

Z = SignedIndex.of

print("=== spec examples ===")
# D_1 of the zeta(2) word [1,0]: no surviving windows
ts = d_r_word(Word([1, 0]), 1)
print("D1 [1,0] raw terms:", ts.terms, "grouped:", ts.grouped())

# D_3 of the zeta(2,4) word -> 2 zeta(3) (x) zeta(3)
sign, w24 = index_to_word(Z(2, 4))
print("zeta(2,4) word:", w24, "sign", sign)
ts = d_r_word(w24, 3)
print("raw terms:", [(str(l), str(r), c) for l, r, c in ts.terms])
g = ts.grouped()
print("grouped (I-value):", {str(k): str(v) for k, v in g.items()})
# zeta-level: multiply by sign
print("zeta-level:", {str(k): str(sign * v) for k, v in g.items()})

# r = |w|: single term, left = whole word, right = empty
ts = d_r_word(w24, 6)
print("full window:", [(str(l), str(r), c) for l, r, c in ts.terms])

print("\n=== normalize_left_factor spot checks ===")
for bw in [
    BoundedWord(0, (0, 1, 0), 1),       # zeta_1(2) = -2 zeta(3)... I-value +2 zeta(3)
    BoundedWord(0, (0, 1, 0, 1, 0), 1), # zeta_1({2}^2): 2 zeta(5)
    BoundedWord(1, (0, 1, 0), 0),       # reversal
    BoundedWord(0, (0, 0, -1), -1),     # scaling
    BoundedWord(0, (0, 0, 0), 1),       # log power -> 0
    BoundedWord(0, (1, 1, 0), 1),       # outside table -> None
    BoundedWord(-1, (0, -1, 0), 1),     # split at 0
]:
    print(bw, "->", normalize_left_factor(bw))

print("\n=== D_1 vanishing on family words ===")
for idx in [Z(-4, -6), Z(3, 5), Z(1, -4, l=3), Z(1, 3, l=4), Z(2, 4, 2)]:
    _, w = index_to_word(idx)
    g = d_r_word(w, 1).grouped()
    print(idx, "-> D1 grouped:", {str(k): str(v) for k, v in g.items()})

print("\n=== families, small params ===")
for fam, ps in [
    ("zbar-zbar", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]),
    ("odd-odd", [(1, 1), (0, 1), (1, 2), (2, 2), (3, 1)]),
    ("general-even", [(2, 4), (1, 3), (3, 5), (2, 2), (5, 3), (1, 5)]),
    ("z1-2bbar", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]),
    ("z1-odd", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]),
    ("z2242", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]),
    ("zstar2242", [(0, 0), (1, 0), (0, 1), (1, 1)]),
]:
    for (x, y) in ps:
        if fam == "zbar-zbar":
            rmax = x + y - 1
        elif fam == "odd-odd":
            rmax = x + y
        elif fam == "general-even":
            rmax = (x + y - 2) // 2
        else:
            rmax = x + y + 1
        for r in range(1, rmax + 1):
            cert = verify_family_Dr(fam, (x, y), r)
            status = "ok" if cert.ok else "FAIL"
            print(f"{fam}{(x, y)} r={r}: {status}")
            if not cert.ok:
                print("   lhs:", {str(k): str(v) for k, v in cert.lhs.items()})
                print("   rhs:", {str(k): str(v) for k, v in cert.rhs.items()})

print("\n=== antipode flip sanity (star via plain, exact) ===")
def idx222(n):
    return Z(*([2] * n))
def idx2242(a, b):
    return Z(*([2] * a + [4] + [2] * b))
for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]:
    star = interp_expand(idx2242(a, b), 1)
    rhs = LinComb.zero()
    for n in range(a + 1):
        for m in range(b + 1):
            rhs = rhs + Fraction((-1) ** (m + n)) * LinComb.atom(idx2242(m, n)) \
                * interp_expand(idx222(a - n), 1) * interp_expand(idx222(b - m), 1)
    diff = linearize_products(star) - linearize_products(rhs)
    print(f"star({a},{b}) == antipode sum:", not diff.terms)

print("\n=== lemma binomial ===")
print("(2,1,1):", lemma_binomial_sides(2, 1, 1))
print("verify (2,1,1):", verify_lemma_binomial(2, 1, 1))
ok = True
for k in range(1, 7):
    for l in range(1, 7):
        for r in range(1, k + l):
            if not (3 <= 2 * r + 1 <= 2 * k + 2 * l - 3):
                continue
            if not verify_lemma_binomial(k, l, r):
                ok = False
                print("FAIL", k, l, r, lemma_binomial_sides(k, l, r))
print("lemma sweep k,l<=6:", ok)

print("\n=== mod products ===")
for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 3), (3, 3)]:
    res = verify_mod_products_2242(a, b)
    print(f"({a},{b}):", res)
