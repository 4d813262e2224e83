"""Support graphs and imprimitivity partitions.

The support graph of an algebra element has the 2n signed indices as
vertices and an edge {i, j} (plus its mirror {-i, -j}) for every index
pair carrying a nonzero coefficient.  Diagonal coefficients contribute
self-loops, which are recorded but never affect connectivity.  For a
rational element the connected components form a block system for the
Galois action; that is the checkable heart of the imprimitivity story.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cmfield import basis_pos
from .errors import TheoremViolationError, UsageError


@dataclass(frozen=True)
class SupportGraph:
    vertices: tuple
    edges: tuple  # (a, b) pairs in basis order; loops appear as (a, a)

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }


@dataclass(frozen=True)
class Partition:
    blocks: tuple  # tuples of signed indices, each sorted, blocks by first member

    def to_json(self):
        return {"blocks": [list(b) for b in self.blocks]}

    @property
    def block_sizes(self):
        return tuple(len(b) for b in self.blocks)


@dataclass(frozen=True)
class BlockVerdict:
    is_block_system: bool
    witness: dict | None

    def to_json(self):
        return {"is_block_system": self.is_block_system, "witness": self.witness}


def _edge(n, a, b):
    if basis_pos(n, a) <= basis_pos(n, b):
        return (a, b)
    return (b, a)


def _components(n, vertices, edges):
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        if a == b:
            continue  # self-loops never glue anything together
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    key = lambda k: basis_pos(n, k)
    blocks = [tuple(sorted(g, key=key)) for g in groups.values()]
    blocks.sort(key=lambda b: key(b[0]))
    return Partition(tuple(blocks))


def _support_edges(v):
    n = v.field.n
    edges = set()
    for i, j in v.coeffs:
        if i == j:
            edges.add((i, i))
            edges.add((-i, -i))
        else:
            edges.add(_edge(n, i, j))
            edges.add(_edge(n, -i, -j))
    return edges


def _sorted_edges(n, edges):
    key = lambda e: (basis_pos(n, e[0]), basis_pos(n, e[1]))
    return tuple(sorted(edges, key=key))


def support_graph(v):
    """Support graph and its component partition for one element."""
    n = v.field.n
    vertices = v.field.signed_indices()
    edges = _support_edges(v)
    graph = SupportGraph(vertices, _sorted_edges(n, edges))
    return graph, _components(n, vertices, edges)


def merged_graph(elements, field=None):
    """Union of the support graphs of several elements (refining partitions merge)."""
    elements = list(elements)
    if field is None and elements:
        field = elements[0].field
    if field is None:
        return SupportGraph((), ()), Partition(())
    edges = set()
    for v in elements:
        if v.field != field:
            raise UsageError("merged_graph needs elements over one common field")
        edges |= _support_edges(v)
    n = field.n
    vertices = field.signed_indices()
    graph = SupportGraph(vertices, _sorted_edges(n, edges))
    return graph, _components(n, vertices, edges)


def is_block_system(field, partition):
    """Check that every generator maps every block onto a block.

    The first failure, in generator-then-block order, is returned as the
    witness: the offending generator (as a label image list), the block,
    and its image set.
    """
    block_sets = [frozenset(b) for b in partition.blocks]
    universe = set()
    for b in block_sets:
        if universe & b:
            raise UsageError("partition blocks overlap")
        universe |= b
    if universe != set(field.signed_indices()):
        raise UsageError("partition does not cover all signed indices")
    have = set(block_sets)
    n = field.n
    gens = field.galois.generators + (field.galois.conjugation,)
    for g in gens:
        for b, bset in zip(partition.blocks, block_sets):
            image = frozenset(field.act_index(g, x) for x in bset)
            if image not in have:
                key = lambda k: basis_pos(n, k)
                return BlockVerdict(
                    False,
                    {
                        "generator": list(g),
                        "block": list(b),
                        "image": sorted(image, key=key),
                    },
                )
    return BlockVerdict(True, None)


def trivial_partition_check(v):
    """Degree-versus-component report for a rational nilpotent element.

    Returns the nilpotency degree l, the largest component size, and whether
    the partition is a single block; when l exceeds n the partition must be
    trivial, and l can never exceed the largest component size.
    """
    from .algebra import is_rational, nilpotency_degree

    field = v.field
    if not is_rational(field, v):
        raise UsageError("trivial_partition_check needs a rational element")
    degree = nilpotency_degree(v)
    _, partition = support_graph(v)
    max_component = max(partition.block_sizes)
    trivial = len(partition.blocks) == 1
    if degree > max_component:
        raise TheoremViolationError(
            f"nilpotency degree {degree} exceeds the largest component size {max_component}"
        )
    hypothesis = degree > field.n
    if hypothesis and not trivial:
        raise TheoremViolationError(
            f"degree {degree} > n = {field.n} but the support partition is not trivial"
        )
    return {
        "nilpotency_degree": degree,
        "max_component_size": max_component,
        "partition_trivial": trivial,
        "degree_exceeds_n": hypothesis,
        "partition": partition.to_json(),
    }


def conjugate_merge_divisibility(field, partition):
    """Divisibility forced by a merged 2-plus-2 conjugate block.

    If some block is a conjugation-closed 4-element set built from a
    conjugate pair of 2-element supports, block systems force equal block
    sizes, so 4 must divide 2n.  Returns the offending blocks, raising when
    the divisibility fails.
    """
    hits = []
    for b in partition.blocks:
        if len(b) == 4 and {-x for x in b} == set(b):
            hits.append(list(b))
    if hits and (2 * field.n) % 4 != 0:
        raise TheoremViolationError(
            f"a conjugation-closed 4-element block needs 4 | {2 * field.n}"
        )
    return hits
