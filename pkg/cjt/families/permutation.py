"""
    Permutation groups on 0..n-1; a permutation is the tuple of images.
"""


def dihedral(n):
    """
        Symmetries of the n-gon, order 2n.
    """
    n = int(n)
    if n < 3:
        raise ValueError("dihedral(n) needs n >= 3")
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return {"permutations": [rotation, reflection], "name": f"dihedral({n})"}


def symmetric(n):
    n = int(n)
    if n < 2:
        raise ValueError("symmetric(n) needs n >= 2")
    transposition = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return {"permutations": [transposition, cycle], "name": f"symmetric({n})"}


def alternating(n):
    """
        Generated by the 3-cycles (0 1 k) for k = 2..n-1.
    """
    n = int(n)
    if n < 3:
        raise ValueError("alternating(n) needs n >= 3")
    gens = []
    for k in range(2, n):
        perm = list(range(n))
        perm[0], perm[1], perm[k] = 1, k, 0
        gens.append(perm)
    return {"permutations": gens, "name": f"alternating({n})"}
