"""
    Elementary abelian p-groups given by unipotent matrix generators over F_p.
"""

import numpy as np


def elementary_abelian(p, r):
    """
        (Z/p)^r as the matrices [[I_r, a], [0, 1]] in GL_{r+1}(F_p); generator i adds e_i to the last column.
    """
    p, r = int(p), int(r)
    if r < 1:
        raise ValueError("rank must be at least 1")
    gens = []
    for i in range(r):
        g = np.eye(r + 1, dtype=np.int64)
        g[i, r] = 1
        gens.append(g.tolist())
    return {"matrices": gens, "prime": p, "name": f"elementary_abelian({p},{r})"}


def klein4():
    spec = elementary_abelian(2, 2)
    spec["name"] = "klein4"
    return spec


def unitriangular_abelian(p):
    """
        The rank-2 group {I + a E_01 + b E_02} inside the upper unitriangular matrices of GL_3(F_p).
    """
    p = int(p)
    x = np.eye(3, dtype=np.int64)
    x[0, 1] = 1
    z = np.eye(3, dtype=np.int64)
    z[0, 2] = 1
    return {"matrices": [x.tolist(), z.tolist()], "prime": p, "name": f"unitriangular_abelian({p})"}
