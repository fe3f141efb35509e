"""SL_2 and SL_3 over F_q[t, 1/t]: root groups, mu-maps, Iwahori-Bruhat and
Birkhoff cells with exact certificates.

Run: python3 demos/05_loop_groups_and_bruhat_cells.py
"""

import random

from twinroot.chevalley import loop_group
from twinroot.laurent import LaurentPoly, diagonal

G = loop_group(3, 2)
f = G.field

print("== root groups and the torus relation ==")
u = G.root_group_element((0, 1, 0), 1)
print("u_alpha(1) =", u)
d = diagonal(f, (LaurentPoly.const(f, 2), LaurentPoly.const(f, f.inv(2))))
print("diag(2, 1/2) u(1) diag(1/2, 2) =", d * u * d.inverse(), " (= u(2^2 * 1) = u(1) over F_3)")

print()
print("== mu-maps and the co-root ==")
m1 = G.mu_map((0, 1, 0), 1)
m2 = G.mu_map((0, 1, 0), 2)
print("m(u(1)) =", m1)
print("m(u(2)) m(u(1))^-1 =", m2 * m1.inverse(), " (the co-root of r = 2)")

print()
print("== Bruhat cells with explicit factorizations ==")
t_diag = diagonal(f, (LaurentPoly.monomial(f, 1, 1), LaurentPoly.monomial(f, -1, 1)))
w, b1, b2 = G.bruhat_cell(t_diag)
print("diag(t, 1/t): cell word =", w.word, " length", w.length)
print("  b1 =", b1)
print("  b2 =", b2)
print("  reconstruction exact:", b1 * G.canonical_representative(w) * b2 == t_diag)

rng = random.Random(0)
g = G.random_element(rng, steps=6)
w, b1, b2 = G.bruhat_cell(g)
print("random element lands in cell", w.word,
      "| round trip:", b1 * G.canonical_representative(w) * b2 == g)

print()
print("== Birkhoff cells (the twin-building codistance) ==")
print("identity:", G.birkhoff_cell(G.identity()).word)
print("lower unipotent I + tE_10:", G.birkhoff_cell(G.root_group_element((1, 0, 1), 1)).word)
print("classical reflection:", G.birkhoff_cell(G._canonical_s(1)).word)
