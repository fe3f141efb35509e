"""Exact-arithmetic Kac-Moody group combinatorics at desk scale.

Modules: gcm (Cartan matrices and root data), weyl (Coxeter engine), roots
(real-root combinatorics), cone (Tits cone and diagram folding), fields /
laurent / chevalley (matrix groups over F_q[t, 1/t]), descent (quasi-split
SU_3), trd (twin root datum verification and twin buildings), cli.
"""

__version__ = "0.1.0"
