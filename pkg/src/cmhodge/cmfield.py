"""Oriented CM fields as finite combinatorial data.

Embeddings are opaque labels; the Galois group is a transitive permutation
group on them whose center contains the fixed-point-free conjugation
involution.  Nothing is ever evaluated in the complex numbers: an
"orientation" assigns a bidegree (p, q) to every label, conjugation swaps
p and q, and all later constructions consume only this data.

Conjugate pairs are indexed by signed integers: index k > 0 names the
member of the k-th pair that comes first in label order, and -k names its
conjugate.  Signed indices are the coordinate system used everywhere
downstream (grading vectors, root indices, support graphs).
"""

from __future__ import annotations

import itertools
from math import gcd, lcm

from .errors import (
    EnumerationCapError,
    InvalidOrientationError,
    NotCMFieldError,
    UsageError,
)

GROUP_ENUMERATION_CAP = 10_000


def basis_pos(n, k):
    """Position of signed index k in the basis order 1..n, -1..-n."""
    if k > 0:
        return k - 1
    return n - k - 1


class GaloisCMData:
    """A transitive permutation group with a central fixed-point-free involution.

    Permutations are tuples of images aligned with ``labels``.
    """

    def __init__(self, labels, generators, conjugation, flavor, conductor=None):
        labels = tuple(labels)
        if len(labels) < 2 or len(labels) % 2 != 0:
            raise NotCMFieldError(
                f"a CM field has an even number of embeddings, got {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise UsageError("labels must be distinct")
        self.labels = labels
        self._pos = {lab: i for i, lab in enumerate(labels)}
        self.generators = tuple(self._check_perm(g) for g in generators)
        self.conjugation = self._check_perm(conjugation)
        if flavor not in ("cyclotomic", "abstract"):
            raise UsageError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.conductor = conductor
        self._group = None
        self._validate()

    # -- permutation plumbing -------------------------------------------

    def _check_perm(self, perm):
        perm = tuple(perm)
        if len(perm) != len(self.labels) or set(perm) != set(self.labels):
            raise UsageError(f"not a permutation of the labels: {perm!r}")
        return perm

    def identity(self):
        return self.labels

    def apply(self, perm, label):
        return perm[self._pos[label]]

    def compose(self, p1, p2):
        """The permutation doing p2 first, then p1."""
        return tuple(p1[self._pos[x]] for x in p2)

    def inverse(self, perm):
        out = [None] * len(perm)
        for i, img in enumerate(perm):
            out[self._pos[img]] = self.labels[i]
        return tuple(out)

    # -- validation ------------------------------------------------------

    def _validate(self):
        c = self.conjugation
        for i, lab in enumerate(self.labels):
            if c[i] == lab:
                raise NotCMFieldError(
                    f"conjugation fixes label {lab!r}",
                    reason="conjugation-has-fixed-point",
                )
        if self.compose(c, c) != self.identity():
            raise NotCMFieldError(
                "conjugation is not an involution",
                reason="conjugation-not-involution",
            )
        for g in self.generators:
            if self.compose(c, g) != self.compose(g, c):
                raise NotCMFieldError(
                    "conjugation does not commute with every generator",
                    reason="conjugation-not-central",
                )
        seen = {self.labels[0]}
        frontier = [self.labels[0]]
        gens = self.generators + (self.conjugation,)
        while frontier:
            nxt = []
            for lab in frontier:
                for g in gens:
                    img = self.apply(g, lab)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        if len(seen) != len(self.labels):
            raise NotCMFieldError(
                "the generated group is not transitive on the labels",
                reason="group-not-transitive",
            )

    # -- group enumeration ----------------------------------------------

    def enumerate_group(self, cap=GROUP_ENUMERATION_CAP):
        """Every group element, breadth first from the identity.  Deterministic."""
        if self._group is not None:
            return self._group
        gens = self.generators + (self.conjugation,)
        ident = self.identity()
        seen = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for perm in frontier:
                for g in gens:
                    prod = self.compose(perm, g)
                    if prod not in seen:
                        if len(seen) >= cap:
                            raise EnumerationCapError(
                                f"group has more than {cap} elements"
                            )
                        seen.add(prod)
                        order.append(prod)
                        nxt.append(prod)
            frontier = nxt
        self._group = tuple(order)
        return self._group

    @property
    def group_order(self):
        return len(self.enumerate_group())

    def __eq__(self, other):
        if not isinstance(other, GaloisCMData):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.generators == other.generators
            and self.conjugation == other.conjugation
            and self.flavor == other.flavor
            and self.conductor == other.conductor
        )

    def __repr__(self):
        if self.flavor == "cyclotomic":
            return f"GaloisCMData(cyclotomic, conductor={self.conductor})"
        return f"GaloisCMData(abstract, degree={len(self.labels)})"


def build_cyclotomic_cm(m):
    """The degree-phi(m) cyclotomic CM datum: labels are units mod m.

    Requires m >= 3 with m not congruent to 2 mod 4, so every conductor
    names a distinct field and conjugation (multiplication by -1) is
    fixed-point free.
    """
    if not isinstance(m, int) or m < 3:
        raise NotCMFieldError(f"conductor {m!r} does not give a CM field")
    if m % 4 == 2:
        raise NotCMFieldError(
            f"conductor {m} is not canonical (congruent to 2 mod 4)",
            reason="conductor-not-canonical",
        )
    labels = tuple(a for a in range(1, m) if gcd(a, m) == 1)

    def mult_perm(a):
        return tuple((a * lab) % m for lab in labels)

    def closure(gens):
        seen = {1}
        frontier = [1]
        while frontier:
            nxt = []
            for x in frontier:
                for a in gens:
                    y = (x * a) % m
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    generators = None
    for a in labels:
        if len(closure([a])) == len(labels):
            generators = [a]
            break
    if generators is None:
        generators = []
        have = {1}
        for a in labels:
            if a in have:
                continue
            generators.append(a)
            have = closure(generators)
            if len(have) == len(labels):
                break
    return GaloisCMData(
        labels=labels,
        generators=[mult_perm(a) for a in generators],
        conjugation=mult_perm(m - 1),
        flavor="cyclotomic",
        conductor=m,
    )


def build_abstract_cm(labels, generators, conjugation):
    """A CM datum from explicit permutations (images aligned with labels)."""
    return GaloisCMData(
        labels=labels,
        generators=generators,
        conjugation=conjugation,
        flavor="abstract",
    )


class Orientation:
    """A weight and a bidegree assignment for every embedding label."""

    def __init__(self, weight, assignment):
        self.weight = weight
        self.assignment = {lab: (int(p), int(q)) for lab, (p, q) in assignment.items()}

    def __eq__(self, other):
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.weight == other.weight and self.assignment == other.assignment

    def to_json(self):
        return {
            "weight": self.weight,
            "assignment": {
                str(lab): [p, q] for lab, (p, q) in sorted(
                    self.assignment.items(), key=lambda kv: str(kv[0])
                )
            },
        }

    @classmethod
    def from_json(cls, obj, labels=None):
        if not isinstance(obj, dict) or "assignment" not in obj:
            raise UsageError("orientation JSON needs an 'assignment' object")
        if "weight" not in obj:
            raise UsageError("orientation JSON needs a 'weight'")
        raw = obj["assignment"]
        key_map = {}
        if labels is not None:
            key_map = {str(lab): lab for lab in labels}
        assignment = {}
        for key, pq in raw.items():
            lab = key_map.get(key)
            if lab is None:
                try:
                    lab = int(key)
                except ValueError:
                    lab = key
            if not isinstance(pq, (list, tuple)) or len(pq) != 2:
                raise UsageError(f"assignment for {key!r} must be a [p, q] pair")
            assignment[lab] = (pq[0], pq[1])
        return cls(obj["weight"], assignment)

    def __repr__(self):
        return f"Orientation(weight={self.weight}, classes={len(self.assignment)})"


def _pair_table(galois):
    """Pair reps in label order: returns (n, index_to_label dict over +-1..+-n)."""
    index_to_label = {}
    seen = set()
    k = 0
    for lab in galois.labels:
        if lab in seen:
            continue
        partner = galois.apply(galois.conjugation, lab)
        k += 1
        index_to_label[k] = lab
        index_to_label[-k] = partner
        seen.add(lab)
        seen.add(partner)
    return k, index_to_label


class OrientedCMField:
    """A Galois CM datum together with a validated odd-weight orientation.

    Built through validate_orientation; carries the signed pair index and
    the bidegree lookup used by the symplectic layer.
    """

    def __init__(self, galois, orientation, _token=None):
        if _token is not _BUILD_TOKEN:
            raise UsageError("use validate_orientation to build an OrientedCMField")
        self.galois = galois
        self.orientation = orientation
        self.n, self.index_to_label = _pair_table(galois)
        self.label_to_index = {lab: k for k, lab in self.index_to_label.items()}

    @property
    def weight(self):
        return self.orientation.weight

    @property
    def working_conductor(self):
        """Conductor of the coefficient field; always divisible by 4."""
        if self.galois.flavor == "cyclotomic":
            return lcm(4, self.galois.conductor)
        return 4

    def bidegree_of_label(self, lab):
        return self.orientation.assignment[lab]

    def bidegree_of_index(self, k):
        return self.orientation.assignment[self.index_to_label[k]]

    def grading_value(self, k):
        p, q = self.bidegree_of_index(k)
        return p - q

    def act_index(self, perm, k):
        """Image of a signed pair index under a group element."""
        return self.label_to_index[self.galois.apply(perm, self.index_to_label[k])]

    def coeff_exponent(self, perm):
        """Exponent of the coefficient automorphism induced by a group element.

        Cyclotomic flavor: the label action is multiplication by some unit a
        mod m, and the coefficient field has conductor lcm(4, m); for odd m
        the exponent is the unique lift of a that fixes the fourth root of
        unity.  Abstract flavor: None (coefficients are plain scalars).
        """
        if self.galois.flavor != "cyclotomic":
            return None
        m = self.galois.conductor
        a = self.galois.apply(perm, 1)
        M = self.working_conductor
        if M == m:
            return a % M
        t = ((1 - a) * pow(m, -1, 4)) % 4
        return (a + m * t) % M

    def sigma(self, a):
        """The group element multiplying labels by a (cyclotomic flavor only)."""
        if self.galois.flavor != "cyclotomic":
            raise UsageError("sigma(a) only makes sense for cyclotomic flavor")
        m = self.galois.conductor
        if gcd(a % m, m) != 1:
            raise UsageError(f"{a} is not a unit modulo {m}")
        return tuple((a * lab) % m for lab in self.galois.labels)

    def signed_indices(self):
        """All 2n signed indices in basis order 1..n, -1..-n."""
        return tuple(
            list(range(1, self.n + 1)) + [-k for k in range(1, self.n + 1)]
        )

    def __eq__(self, other):
        if not isinstance(other, OrientedCMField):
            return NotImplemented
        return self.galois == other.galois and self.orientation == other.orientation

    def __repr__(self):
        return f"OrientedCMField({self.galois!r}, weight={self.weight}, n={self.n})"


_BUILD_TOKEN = object()


def validate_orientation(galois, orientation):
    """Check an orientation against a CM datum and return the oriented field.

    Enforces: odd positive weight, every label assigned exactly once with
    p + q = weight and p, q >= 0, and conjugation swapping (p, q) -> (q, p).
    """
    weight = orientation.weight
    if not isinstance(weight, int) or weight < 1 or weight % 2 == 0:
        raise InvalidOrientationError(
            f"odd weight required, got {weight!r}", reason="odd-weight-required"
        )
    assignment = orientation.assignment
    if set(assignment) != set(galois.labels):
        raise InvalidOrientationError(
            "assignment labels do not match the field's embedding labels"
        )
    for lab, (p, q) in assignment.items():
        if p < 0 or q < 0 or p + q != weight:
            raise InvalidOrientationError(
                f"label {lab!r} has bidegree ({p}, {q}), which does not fit weight {weight}"
            )
    for lab in galois.labels:
        p, q = assignment[lab]
        pc, qc = assignment[galois.apply(galois.conjugation, lab)]
        if (pc, qc) != (q, p):
            raise InvalidOrientationError(
                f"conjugation must swap bidegrees; label {lab!r} breaks the symmetry"
            )
    return OrientedCMField(galois, orientation, _token=_BUILD_TOKEN)


def enumerate_orientations(galois, weight, hodge_numbers):
    """All orientations with the given Hodge numbers, in lexicographic order.

    hodge_numbers lists the multiplicities (h^{weight,0}, ..., h^{0,weight});
    it must be symmetric and sum to the number of embeddings.  Each conjugate
    pair independently picks an ordered bidegree class for its first member,
    so the output order is the lexicographic order of those picks with
    classes sorted by descending p.
    """
    if not isinstance(weight, int) or weight < 1 or weight % 2 == 0:
        raise InvalidOrientationError(
            f"odd weight required, got {weight!r}", reason="odd-weight-required"
        )
    h = list(hodge_numbers)
    if len(h) != weight + 1:
        raise UsageError(
            f"weight {weight} needs {weight + 1} Hodge numbers, got {len(h)}"
        )
    if any((not isinstance(x, int)) or x < 0 for x in h):
        raise UsageError("Hodge numbers must be nonnegative integers")
    if h != h[::-1]:
        raise UsageError("Hodge numbers must be symmetric")
    if sum(h) != len(galois.labels):
        raise UsageError(
            f"Hodge numbers sum to {sum(h)}, but the field has {len(galois.labels)} embeddings"
        )
    n, index_to_label = _pair_table(galois)
    classes = [(weight - t, t) for t in range(weight + 1)]
    out = []
    for combo in itertools.product(range(weight + 1), repeat=n):
        counts = [0] * (weight + 1)
        for t in combo:
            counts[t] += 1
            counts[weight - t] += 1
        if counts != h:
            continue
        assignment = {}
        for k, t in enumerate(combo, start=1):
            p, q = classes[t]
            assignment[index_to_label[k]] = (p, q)
            assignment[index_to_label[-k]] = (q, p)
        out.append(Orientation(weight, assignment))
    return out


class GradingVector:
    """Integer weights on signed indices with v(-k) = -v(k)."""

    def __init__(self, values):
        vals = {int(k): int(v) for k, v in values.items()}
        for k, v in vals.items():
            if k == 0:
                raise UsageError("0 is not a signed index")
            if vals.get(-k) != -v:
                raise UsageError("grading vector must be odd under conjugation")
        self.values = vals

    def value(self, k):
        return self.values[k]

    def pair_tuple(self):
        n = max(self.values)
        return tuple(self.values[k] for k in range(1, n + 1))

    def __eq__(self, other):
        if not isinstance(other, GradingVector):
            return NotImplemented
        return self.values == other.values

    def to_json(self):
        n = max(self.values)
        return {"pair_values": {str(k): self.values[k] for k in range(1, n + 1)}}

    def __repr__(self):
        return f"GradingVector({self.pair_tuple()})"


def grading_vector(field):
    """The eigenvalue vector p - q of the grading element, per signed index."""
    return GradingVector(
        {k: field.grading_value(k) for k in field.signed_indices()}
    )


def galois_act_grading(field, perm, vec):
    """Pull a grading vector back along a group element: (g.v)(k) = v(g^{-1} k)."""
    inv = field.galois.inverse(perm)
    return GradingVector(
        {k: vec.value(field.act_index(inv, k)) for k in field.signed_indices()}
    )


# -- serialization ------------------------------------------------------


def field_to_json(galois):
    if galois.flavor == "cyclotomic":
        return {"flavor": "cyclotomic", "conductor": galois.conductor}
    return {
        "flavor": "abstract",
        "labels": list(galois.labels),
        "generators": [list(g) for g in galois.generators],
        "conjugation": list(galois.conjugation),
    }


def field_from_json(obj):
    if not isinstance(obj, dict) or "flavor" not in obj:
        raise UsageError("field JSON needs a 'flavor'")
    if obj["flavor"] == "cyclotomic":
        m = obj.get("conductor")
        if not isinstance(m, int):
            raise UsageError("cyclotomic field JSON needs an integer 'conductor'")
        return build_cyclotomic_cm(m)
    if obj["flavor"] == "abstract":
        for key in ("labels", "generators", "conjugation"):
            if key not in obj:
                raise UsageError(f"abstract field JSON needs {key!r}")
        return build_abstract_cm(obj["labels"], obj["generators"], obj["conjugation"])
    raise UsageError(f"unknown field flavor {obj['flavor']!r}")


def oriented_to_json(field):
    out = field_to_json(field.galois)
    out["orientation"] = field.orientation.to_json()
    return out


def oriented_from_json(obj):
    if not isinstance(obj, dict) or "orientation" not in obj:
        raise UsageError("oriented field JSON needs an 'orientation'")
    galois = field_from_json(obj)
    orientation = Orientation.from_json(obj["orientation"], labels=galois.labels)
    return validate_orientation(galois, orientation)
