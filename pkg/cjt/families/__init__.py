from . import abelian
from . import heisenberg
from . import permutation
from . import modules

GROUP_FAMILIES = {
    "elementary_abelian": abelian.elementary_abelian,
    "klein4": abelian.klein4,
    "unitriangular_abelian": abelian.unitriangular_abelian,
    "heisenberg": heisenberg.heisenberg,
    "dihedral": permutation.dihedral,
    "alternating": permutation.alternating,
    "symmetric": permutation.symmetric,
}

MODULE_FAMILIES = {
    "trivial": modules.trivial,
    "regular": modules.regular,
    "natural": modules.natural,
    "radical": modules.radical_quotient,
    "cyclic": modules.cyclic_quotient,
    "sym": modules.symmetric_power,
}
