"""Validate generalized Cartan matrices and build the standard root data.

Run: python3 demos/01_cartan_matrices_and_root_data.py
"""

from twinroot import gcm
from twinroot.errors import GcmError

print("== validating matrices ==")
for candidate in ([[2]], [[2, -1], [-1, 2]], [[2, -1], [0, 2]]):
    try:
        A = gcm.validate_gcm(candidate)
        print(f"{candidate} -> valid, rank {A.n}")
    except GcmError as exc:
        print(f"{candidate} -> rejected: {exc}")

print()
print("== the two standard data over A2 ==")
A2 = gcm.A2
sc = gcm.simply_connected_datum(A2)
ad = gcm.minimal_adjoint_datum(A2)
print("simply connected: c =", sc.c, " h =", sc.h)
print("minimal adjoint:  c =", ad.c, " h =", ad.h)
print("pairing <h_1, c_0> =", sc.pairing(1, 0), "= a[1][0] =", A2.a[1][0])

print()
print("== duality is an involution ==")
dual = gcm.dual_datum(sc)
print("dual matrix:", dual.gcm.a)
print("dual of dual == original:", gcm.dual_datum(dual) == sc)

print()
print("== JSON is the ingestion format for every other module ==")
print(sc.to_json())
