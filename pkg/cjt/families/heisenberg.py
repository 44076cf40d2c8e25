import numpy as np


def heisenberg(p):
    """
        Upper unitriangular 3x3 matrices over F_p, generated by I + E_01 and I + E_12. Order p^3.
    """
    p = int(p)
    x = np.eye(3, dtype=np.int64)
    x[0, 1] = 1
    y = np.eye(3, dtype=np.int64)
    y[1, 2] = 1
    return {"matrices": [x.tolist(), y.tolist()], "prime": p, "name": f"heisenberg({p})"}
