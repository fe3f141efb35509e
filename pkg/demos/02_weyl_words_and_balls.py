"""The Coxeter engine: exact reflection action, word problem, balls.

Every element is its integer action matrix on the root lattice; the stored
word is the ShortLex-minimal reduced expression recomputed by descent.

Run: python3 demos/02_weyl_words_and_balls.py
"""

from twinroot import gcm, weyl

A2 = gcm.A2
print("Coxeter matrix of A2:", weyl.coxeter_matrix(A2).m)
print("Coxeter matrix of affine A1:", weyl.coxeter_matrix(gcm.AFFINE_A1).m)

print()
print("== the braid relation, normalized ==")
left = weyl.from_word(A2, (0, 1, 0))
right = weyl.from_word(A2, (1, 0, 1))
print("s0 s1 s0 == s1 s0 s1:", left == right, "| canonical word:", left.word)

print()
print("== reduced or not ==")
for word in ((0, 1, 0, 1), (0, 1, 0), ()):
    print(f"A2 word {word}: reduced = {weyl.is_reduced(A2, word)}")
print("affine A1 word (0,1,0,1,0): reduced =", weyl.is_reduced(gcm.AFFINE_A1, (0, 1, 0, 1, 0)))

print()
print("== balls ==")
for name, A, radius in (("A2", A2, 10), ("B2", gcm.B2, 10), ("G2", gcm.G2, 14)):
    ball = weyl.enumerate_ball(A, radius)
    print(f"{name}: |W| = {len(ball)}; longest element = {ball[-1].word}")
ball = weyl.enumerate_ball(gcm.AFFINE_A1, 4)
print("affine A1 ball of radius 4:", [w.word for w in ball])

print()
print("== exact orders of products of reflections ==")
for A, label in ((A2, "A2"), (gcm.AFFINE_A1, "affine A1")):
    prod = weyl.from_word(A, (0, 1)).mat
    print(f"{label}: order(s0 s1) = {weyl.matrix_order(prod)}")
