"""
    Finite groups as multiplication tables and the poset of their nontrivial elementary abelian
    p-subgroups with the conjugation action.
"""

import logging
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from cjt.errors import GroupSpecError, LatticeError, ResourceLimitError
from utils.ffield import PrimeField, is_prime

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 50_000


class GroupTable:
    """
        A finite group on the indices 0..n-1 with 0 the identity.
        `generators` are element indices; `words[g]` is (parent, generator position) along a fixed
        breadth-first factorization g = parent * generators[position].
    """

    def __init__(self, table, generators=None, matrices=None, prime=None, labels=None, name="group", validate=True):
        self.table = np.asarray(table, dtype=np.int64)
        self.order = self.table.shape[0]
        self.name = name
        if self.table.shape != (self.order, self.order):
            raise GroupSpecError("multiplication table must be square")
        if validate:
            self._validate()
        self.inverse = np.argmax(self.table == 0, axis=1)
        self.matrices = matrices
        self.prime = prime
        self.labels = labels
        self.generators = list(generators) if generators is not None else self._greedy_generators()
        self.orders = self._element_orders()
        self.words = self._factorize()

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    def _validate(self):
        n = self.order
        T = self.table
        if T.min() < 0 or T.max() >= n:
            raise GroupSpecError("table entries out of range")
        idx = np.arange(n)
        if not (T[0] == idx).all() or not (T[:, 0] == idx).all():
            raise GroupSpecError("element 0 is not a two-sided identity")
        for row in T:
            if len(set(row.tolist())) != n:
                raise GroupSpecError("table is not a Latin square")
        # (ab)c == a(bc), one a at a time: rows T[ab] against T[a] applied to the whole table
        for a in range(n):
            left = T[T[a]]
            right = T[a][T]
            if not np.array_equal(left, right):
                b, c = np.argwhere(left != right)[0]
                raise GroupSpecError(f"table is not associative at {(a, int(b), int(c))}")

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def power(self, a, k):
        result = 0
        for _ in range(k % int(self.orders[a])):
            result = self.mul(result, a)
        return result

    def conjugate(self, x, g):
        """x g x^-1."""
        return self.mul(self.mul(x, g), self.inv(x))

    def commute(self, a, b):
        return self.table[a, b] == self.table[b, a]

    def closure(self, gens):
        """
            Sorted list of elements of the subgroup generated by gens.
        """
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = int(self.table[a, s])
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def _greedy_generators(self):
        gens, span = [], {0}
        for g in range(1, self.order):
            if g not in span:
                gens.append(g)
                span = set(self.closure(gens))
        return gens

    def _element_orders(self):
        orders = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            k, a = 1, g
            while a != 0:
                a = int(self.table[a, g])
                k += 1
            orders[g] = k
        return orders

    def _factorize(self):
        words = {0: None}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for pos, s in enumerate(self.generators):
                b = int(self.table[a, s])
                if b not in words:
                    words[b] = (a, pos)
                    queue.append(b)
        if len(words) != self.order:
            raise GroupSpecError("generators do not generate the group")
        return words

    def elements_of_order(self, p):
        return [g for g in range(self.order) if self.orders[g] == p]

    def to_json(self):
        out = {"name": self.name, "order": self.order, "generators": self.generators}
        if self.prime is not None:
            out["prime"] = self.prime
        return out


# ------------------------------------ construction ------------------------------------

def _close(generators, multiply, identity, key, max_order):
    """
        Breadth-first closure of generators under right multiplication. Returns (elements, index, gen indices).
    """
    elements = [identity]
    index = {key(identity): 0}
    queue = deque([0])
    while queue:
        a = elements[queue.popleft()]
        for s in generators:
            b = multiply(a, s)
            k = key(b)
            if k not in index:
                if len(elements) >= max_order:
                    raise ResourceLimitError("max_order", max_order,
                                             f"generated group exceeds the order cap {max_order}")
                index[k] = len(elements)
                elements.append(b)
                queue.append(index[k])
    gen_idx = [index[key(s)] for s in generators]
    return elements, index, gen_idx


def _table_from_elements(elements, index, multiply, key):
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[key(multiply(a, b))]
    return table


def group_from_matrices(gens, p, name="matrix group", max_order=MAX_GROUP_ORDER):
    F = PrimeField(p)
    gens = [F.reduce(g) for g in gens]
    if not gens:
        raise GroupSpecError("at least one generator matrix is required")
    n = gens[0].shape[0]
    for g in gens:
        if g.shape != (n, n):
            raise GroupSpecError("generator matrices must be square of equal size")
        if F.rank(g) != n:
            raise GroupSpecError("generator matrix is singular")

    def multiply(a, b):
        return (a @ b) % p

    def key(a):
        return a.tobytes()

    elements, index, gen_idx = _close(gens, multiply, np.eye(n, dtype=np.int64), key, max_order)
    table = _table_from_elements(elements, index, multiply, key)
    return GroupTable(table, generators=gen_idx, matrices=np.array(elements), prime=p, name=name, validate=False)


def group_from_permutations(gens, name="permutation group", max_order=MAX_GROUP_ORDER):
    gens = [tuple(int(v) for v in g) for g in gens]
    if not gens:
        raise GroupSpecError("at least one permutation is required")
    n = len(gens[0])
    for g in gens:
        if sorted(g) != list(range(n)):
            raise GroupSpecError(f"{g} is not a permutation of 0..{n - 1}")

    # (a * b)(i) = a(b(i))
    def multiply(a, b):
        return tuple(a[b[i]] for i in range(n))

    elements, index, gen_idx = _close(gens, multiply, tuple(range(n)), lambda a: a, max_order)
    table = _table_from_elements(elements, index, multiply, lambda a: a)
    return GroupTable(table, generators=gen_idx, labels=[list(e) for e in elements], name=name, validate=False)


def build_group(spec, max_order=MAX_GROUP_ORDER):
    """
        Build a GroupTable from a spec dict with one of the keys
        "table", "permutations", "matrices" (with "prime") or "family" (with "params").
    """
    name = spec.get("name", "group")
    if "table" in spec:
        table = np.asarray(spec["table"], dtype=np.int64)
        if table.shape[0] > max_order:
            raise ResourceLimitError("max_order", max_order)
        return GroupTable(table, generators=spec.get("generators"), name=name)
    if "permutations" in spec:
        return group_from_permutations(spec["permutations"], name=name, max_order=max_order)
    if "matrices" in spec:
        p = spec.get("prime")
        if p is None or not is_prime(int(p)):
            raise GroupSpecError("matrix generators need a prime")
        return group_from_matrices(spec["matrices"], int(p), name=name, max_order=max_order)
    if "family" in spec:
        from cjt import families
        builder = families.GROUP_FAMILIES.get(spec["family"])
        if builder is None:
            raise GroupSpecError(f"unknown group family {spec['family']!r}")
        try:
            inner = builder(*spec.get("params", []))
        except (TypeError, ValueError) as e:
            raise GroupSpecError(f"bad parameters for {spec['family']}: {e}") from None
        return build_group(inner, max_order=max_order)
    raise GroupSpecError("group spec needs one of table / permutations / matrices / family")


def subgroup_table(G, elements):
    """
        The subgroup on `elements` as a group in its own right, and the embedding (sorted element array).
    """
    embedding = np.array(sorted(set(int(g) for g in elements)), dtype=np.int64)
    if embedding[0] != 0:
        raise GroupSpecError("subgroup must contain the identity")
    position = {int(g): i for i, g in enumerate(embedding)}
    try:
        table = np.array([[position[G.mul(a, b)] for b in embedding] for a in embedding], dtype=np.int64)
    except KeyError:
        raise GroupSpecError("elements are not closed under multiplication") from None
    matrices = G.matrices[embedding] if G.matrices is not None else None
    H = GroupTable(table, matrices=matrices, prime=G.prime, name=f"subgroup of {G.name}", validate=False)
    return H, embedding


# ------------------------------------ E(tau) ------------------------------------

@dataclass(frozen=True)
class Subgroup:
    """
        An elementary abelian p-subgroup: sorted elements, rank and an ordered basis g_1..g_r.
        `exponents[k]` is the exponent vector of elements[k] in that basis.
    """
    elements: tuple
    rank: int
    basis: tuple
    exponents: tuple = field(compare=False, repr=False)

    def __contains__(self, g):
        return g in self.elements

    def __len__(self):
        return len(self.elements)

    def nonidentity(self):
        return self.elements[1:]

    def exponent(self, g):
        return self.exponents[self.elements.index(g)]

    def element(self, exps, G):
        g = 0
        for b, e in zip(self.basis, exps):
            g = G.mul(g, G.power(b, int(e)))
        return g

    def with_basis(self, basis, G, p):
        return make_subgroup(G, self.elements, p, basis=basis)

    def to_json(self):
        return {"elements": list(self.elements), "rank": self.rank, "basis": list(self.basis)}


def make_subgroup(G, elements, p, basis=None):
    """
        Subgroup record for an elementary abelian p-subgroup. Without a basis, the greedy one
        (smallest indices first) is chosen.
    """
    elements = tuple(sorted(int(g) for g in elements))
    if basis is None:
        basis, span = [], {0}
        for g in elements[1:]:
            if g not in span:
                basis.append(g)
                span = set(G.closure(basis))
    basis = tuple(int(b) for b in basis)
    rank = len(basis)
    if len(elements) != p ** rank or tuple(G.closure(basis)) != elements:
        raise LatticeError(f"{basis} is not a basis of the subgroup")
    exponents = {}
    for exps in np.ndindex(*([p] * rank)):
        g = 0
        for b, e in zip(basis, exps):
            for _ in range(e):
                g = G.mul(g, b)
        exponents[g] = tuple(int(e) for e in exps)
    return Subgroup(elements, rank, basis, tuple(exponents[g] for g in elements))


class ElabLattice:
    """
        The poset of nontrivial elementary abelian p-subgroups of G with inclusions as a networkx
        DiGraph (edges point from a subgroup to the members covering it), the maximal members,
        intersections of maximal members and the conjugation action E -> x E x^-1.
    """

    def __init__(self, G, p):
        if not is_prime(p) or G.order % p:
            raise LatticeError(f"p={p} does not divide the group order {G.order}")
        self.G = G
        self.p = p
        self.members = self._enumerate()
        self._index = {E.elements: k for k, E in enumerate(self.members)}

        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(len(self.members)))
        sets = [set(E.elements) for E in self.members]
        for a, Ea in enumerate(self.members):
            for b, Eb in enumerate(self.members):
                if Eb.rank == Ea.rank + 1 and sets[a] < sets[b]:
                    self.graph.add_edge(a, b)
        self.maximals = [k for k in self.graph.nodes if self.graph.out_degree(k) == 0]

        self.intersections = {}
        for i, a in enumerate(self.maximals):
            for b in self.maximals[i + 1:]:
                common = tuple(sorted(sets[a] & sets[b]))
                self.intersections[(a, b)] = self._index.get(common)

        self.conjugation = np.zeros((len(self.members), G.order), dtype=np.int64)
        for k, E in enumerate(self.members):
            for x in range(G.order):
                image = tuple(sorted(G.conjugate(x, g) for g in E.elements))
                self.conjugation[k, x] = self._index[image]
        logger.info("lattice of %s at p=%d: %d members, %d maximal", G.name, p, len(self.members), len(self.maximals))

    def _enumerate(self):
        G, p = self.G, self.p
        order_p = G.elements_of_order(p)
        found = {}
        layer = []
        for g in order_p:
            elems = tuple(G.closure([g]))
            if elems not in found:
                found[elems] = [g]
                layer.append(elems)
        while layer:
            next_layer = []
            for elems in layer:
                gens = found[elems]
                for g in order_p:
                    if g in elems or not all(G.commute(g, h) for h in gens):
                        continue
                    bigger = tuple(G.closure(gens + [g]))
                    if bigger not in found:
                        found[bigger] = gens + [g]
                        next_layer.append(bigger)
            layer = next_layer
        return [make_subgroup(G, elems, p) for elems in sorted(found)]

    def __len__(self):
        return len(self.members)

    def index(self, E):
        elements = E.elements if isinstance(E, Subgroup) else tuple(sorted(E))
        try:
            return self._index[elements]
        except KeyError:
            raise LatticeError("subgroup is not a member of the lattice") from None

    def member(self, k):
        return self.members[k]

    def rank_members(self, r):
        return [k for k, E in enumerate(self.members) if E.rank == r]

    def containing_maximals(self, E):
        """
            Indices of maximal members containing E, in lattice order.
        """
        k = self.index(E)
        above = nx.descendants(self.graph, k) | {k}
        return [m for m in self.maximals if m in above]

    def contains(self, small, big):
        a, b = self.index(small), self.index(big)
        return a == b or nx.has_path(self.graph, a, b)

    def conjugation_map(self, E, x):
        """
            E^x = x E x^-1 and the bijection g -> x g x^-1 (as a dict). The image carries the
            transported basis.
        """
        k = self.index(E)
        G = self.G
        mapping = {g: G.conjugate(x, g) for g in E.elements}
        image = self.members[int(self.conjugation[k, x])]
        image = make_subgroup(G, image.elements, self.p, basis=[mapping[b] for b in E.basis])
        return image, mapping

    def to_json(self):
        return {
            "prime": self.p,
            "members": [E.to_json() for E in self.members],
            "edges": sorted([list(e) for e in self.graph.edges]),
            "maximals": self.maximals,
            "intersections": [[a, b, c] for (a, b), c in sorted(self.intersections.items())],
        }


def elementary_abelian_lattice(G, p):
    return ElabLattice(G, p)
