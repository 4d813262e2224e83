"""Rank computations and theorem-level verdicts.

Two independent routes to circulant ranks (polynomial gcd and explicit
elimination) back the nondegeneracy dichotomy; orbit ranks over the full
Galois group decide nondegeneracy of an oriented field; and the escape
and rigidity verdicts wire the algebraic layer to the combinatorial one.
A TheoremViolationError from any function here means a proved statement
failed on concrete data, which is release blocking by design.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    bidegree,
    bracket,
    cartan_elements,
    default_polarization,
    galois_act_element,
    generated_subalgebra,
    is_rational,
    nilpotency_degree,
    reynolds_average,
    root_vector,
)
from .cmfield import basis_pos, galois_act_grading, grading_vector
from .errors import (
    PreconditionError,
    TheoremViolationError,
    UsageError,
)
from .graphs import support_graph
from .linalg import rank_rational
from .polynomials import Poly, poly_gcd


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CirculantSpec:
    """Integer entries (A_0, ..., A_{p-1}) of a p x p circulant, p an odd prime."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(a) for a in self.entries)
        object.__setattr__(self, "entries", entries)
        p = len(entries)
        if p % 2 == 0 or not _is_prime(p):
            raise UsageError(f"circulant length must be an odd prime, got {p}")

    @property
    def size(self):
        return len(self.entries)

    def all_odd(self):
        return all(a % 2 != 0 for a in self.entries)


def circulant_matrix(spec):
    """The explicit matrix: each row is the previous one shifted cyclically left."""
    p = spec.size
    return [[spec.entries[(s + t) % p] for s in range(p)] for t in range(p)]


def circulant_rank(spec):
    """Rank via the gcd of the symbol polynomial with x^p - 1."""
    p = spec.size
    f = Poly(spec.entries)
    g = poly_gcd(f, Poly.x_power(p) - Poly.one())
    return p - g.degree if not f.is_zero() else 0


DICHOTOMY_RANK_P = "rank_p"
DICHOTOMY_ALL_EQUAL = "all_equal"


def ribet_dichotomy(spec):
    """For all-odd entries: either the rank is p or the entries are constant."""
    if not spec.all_odd():
        raise UsageError("the rank dichotomy needs all entries odd")
    rank = circulant_rank(spec)
    if rank == spec.size:
        return DICHOTOMY_RANK_P
    if len(set(spec.entries)) == 1:
        return DICHOTOMY_ALL_EQUAL
    raise TheoremViolationError(
        f"odd circulant {spec.entries} has rank {rank} < {spec.size} "
        "without being constant"
    )


def orbit_rank(field):
    """Rank over Q of the Galois orbit of the grading vector, in pair coordinates."""
    base = grading_vector(field)
    rows = [
        galois_act_grading(field, g, base).pair_tuple()
        for g in field.galois.enumerate_group()
    ]
    return rank_rational(rows)


VERDICT_NONDEGENERATE = "nondegenerate"
VERDICT_DEGENERATE = "degenerate_under_span_assumption"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RankReport:
    orbit_rank: int
    cartan_bound: int
    verdict: str
    circulant_rank: int | None
    dichotomy_branch: str | None
    circulant_entries: tuple | None
    orbit_vectors: tuple
    grading: tuple

    def to_json(self):
        return {
            "orbit_rank": self.orbit_rank,
            "cartan_bound": self.cartan_bound,
            "verdict": self.verdict,
            "circulant_rank": self.circulant_rank,
            "dichotomy_branch": self.dichotomy_branch,
            "circulant_entries": (
                list(self.circulant_entries)
                if self.circulant_entries is not None
                else None
            ),
            "orbit_vectors": [list(v) for v in self.orbit_vectors],
            "grading": list(self.grading),
        }


def _transitive_sign_free_element(field):
    """First group element of order n that cycles the pairs without sign flips.

    Only searched when n is prime; returns (perm, cycle of pair indices) or
    None.  Sign mixing (a positive index mapping to a negative one) defeats
    the plain circulant picture, so such elements are skipped.
    """
    n = field.n
    if not _is_prime(n):
        return None
    for g in field.galois.enumerate_group():
        images = {}
        ok = True
        for k in range(1, n + 1):
            img = field.act_index(g, k)
            if img < 0:
                ok = False
                break
            images[k] = img
        if not ok:
            continue
        cycle = [1]
        while True:
            nxt = images[cycle[-1]]
            if nxt == 1:
                break
            cycle.append(nxt)
        if len(cycle) != n:
            continue
        return g, cycle
    return None


def nondegeneracy_verdict(field):
    """Rank report for an oriented field: orbit rank vs the Cartan bound.

    When n is prime and some group element cycles the conjugate pairs
    without sign mixing, the circulant route is also reported and its
    dichotomy is enforced; otherwise the orbit rank alone decides.
    """
    base = grading_vector(field)
    rows = [
        galois_act_grading(field, g, base).pair_tuple()
        for g in field.galois.enumerate_group()
    ]
    rank = rank_rational(rows)
    n = field.n
    circ_rank = None
    branch = None
    circ_entries = None
    found = _transitive_sign_free_element(field)
    if found is not None:
        _, cycle = found
        circ_entries = tuple(base.value(k) for k in cycle)
        spec = CirculantSpec(circ_entries)
        circ_rank = circulant_rank(spec)
        branch = ribet_dichotomy(spec)
    verdict = VERDICT_NONDEGENERATE if rank == n else VERDICT_DEGENERATE
    return RankReport(
        orbit_rank=rank,
        cartan_bound=n,
        verdict=verdict,
        circulant_rank=circ_rank,
        dichotomy_branch=branch,
        circulant_entries=circ_entries,
        orbit_vectors=tuple(tuple(r) for r in rows),
        grading=base.pair_tuple(),
    )


def escape_verdict(field, pol, nilpotent):
    """Check that a deep rational nilpotent forces the full algebra.

    Preconditions: the field must be certified nondegenerate and the element
    rational and nilpotent.  When its degree exceeds n, the support partition
    must be trivial and the bracket closure of the Cartan subalgebra together
    with the element must reach the ambient dimension n(2n+1).
    """
    report = nondegeneracy_verdict(field)
    if report.verdict != VERDICT_NONDEGENERATE:
        raise PreconditionError(
            "escape_verdict needs a nondegenerate field "
            f"(orbit rank {report.orbit_rank} < {report.cartan_bound})",
            reason="field-not-nondegenerate",
        )
    if not is_rational(field, nilpotent):
        raise UsageError("escape_verdict needs a rational element")
    degree = nilpotency_degree(nilpotent)  # raises when not nilpotent
    _, partition = support_graph(nilpotent)
    trivial = len(partition.blocks) == 1
    n = field.n
    ambient = n * (2 * n + 1)
    out = {
        "nilpotency_degree": degree,
        "cartan_bound": n,
        "applicable": degree > n,
        "partition_trivial": trivial,
        "partition": partition.to_json(),
        "ambient_dimension": ambient,
        "closure_dimension": None,
        "nondegeneracy": report.to_json(),
    }
    if degree > n:
        if not trivial:
            raise TheoremViolationError(
                f"degree {degree} > n = {n} but the support partition is not trivial"
            )
        dim, _ = generated_subalgebra(cartan_elements(field, pol) + [nilpotent])
        out["closure_dimension"] = dim
        if dim != ambient:
            raise TheoremViolationError(
                f"closure dimension {dim} fell short of the ambient {ambient}"
            )
    return out


def _edge_orbits(field):
    """Galois orbits of unordered index pairs, in deterministic order."""
    n = field.n
    key = lambda k: basis_pos(n, k)

    def norm(a, b):
        return (a, b) if key(a) <= key(b) else (b, a)

    signed = field.signed_indices()
    all_edges = set()
    for idx, a in enumerate(signed):
        for b in signed[idx + 1 :]:
            all_edges.add(norm(a, b))
    gens = field.galois.generators + (field.galois.conjugation,)
    orbits = []
    seen = set()
    for edge in sorted(all_edges, key=lambda e: (key(e[0]), key(e[1]))):
        if edge in seen:
            continue
        orbit = {edge}
        frontier = [edge]
        while frontier:
            nxt = []
            for a, b in frontier:
                for g in gens:
                    img = norm(field.act_index(g, a), field.act_index(g, b))
                    if img not in orbit:
                        orbit.add(img)
                        nxt.append(img)
            frontier = nxt
        seen |= orbit
        orbits.append(tuple(sorted(orbit, key=lambda e: (key(e[0]), key(e[1])))))
    return orbits


def rigidity_verdict(field):
    """Decide whether the horizontal rational directions all sit in degree zero.

    An edge orbit is admissible when every edge in it has grading eigenvalue
    in {-1, 0, 1}; an admissible orbit containing an edge of nonzero
    eigenvalue is a potential horizontal escape route, and its existence is
    the only way rigidity can fail.  Under the hypotheses (h of type
    (1, 1, ...) at the top and 4 not dividing 2n) any such orbit contradicts
    the rigidity theorem, so one is reported as a violation.
    """
    n = field.n
    weight = field.weight
    h_top = sum(
        1 for lab in field.galois.labels if field.bidegree_of_label(lab)[0] == weight
    )
    h_next = sum(
        1
        for lab in field.galois.labels
        if field.bidegree_of_label(lab)[0] == weight - 1
    )
    hypotheses = {
        "weight_odd_gt_1": weight > 1,
        "h_top_is_1": h_top == 1,
        "h_next_is_1": h_next == 1,
        "dim_not_divisible_by_4": (2 * n) % 4 != 0,
    }
    hypotheses_met = all(hypotheses.values())
    pol = default_polarization(field)
    orbits_report = []
    offending = []
    for orbit in _edge_orbits(field):
        degs = [bidegree(field, a, b) for a, b in orbit]
        max_abs = max(abs(d) for d in degs)
        admissible = max_abs <= 1
        has_nonzero = any(d != 0 for d in degs)
        entry = {
            "representative": list(orbit[0]),
            "size": len(orbit),
            "max_abs_bidegree": max_abs,
            "admissible": admissible,
            "has_nonzero_bidegree": has_nonzero,
        }
        if admissible and has_nonzero:
            a, b = orbit[0]
            avg = reynolds_average(field, root_vector(field, pol, a, b))
            graph, _ = support_graph(avg)
            realized = {tuple(e) for e in graph.edges}
            entry["witness_nonzero"] = not avg.is_zero()
            entry["witness_support_edges"] = [list(e) for e in graph.edges]
            entry["witness_cancellation"] = realized != set(orbit)
            offending.append(entry)
        orbits_report.append(entry)
    rigid = not offending
    out = {
        "weight": weight,
        "pairs": n,
        "hypotheses": hypotheses,
        "hypotheses_met": hypotheses_met,
        "verdict": "rigid" if rigid else "not-rigid",
        "orbits": orbits_report,
        "offending_orbits": [list(e["representative"]) for e in offending],
    }
    if hypotheses_met and not rigid:
        raise TheoremViolationError(
            "rigidity hypotheses hold but an admissible nonzero-bidegree "
            f"edge orbit exists (representative {offending[0]['representative']})"
        )
    return out
