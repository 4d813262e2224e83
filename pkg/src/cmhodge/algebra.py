"""The Hodge-aligned basis of sp(2n) attached to an oriented CM field.

The 2n basis vectors of the underlying space are indexed by signed pair
indices in the order w_1..w_n, w_{-1}..w_{-n}; conjugation sends w_k to
w_{-k}.  The symplectic form pairs w_k with w_{-k} only, with purely
imaginary value Q_k, and the algebra is spanned by the vectors

    X_{i,j} = E_{i,j} + (Q_i / -Q_j) E_{-j,-i}

where E_{a,b} is the elementary endomorphism sending w_b to w_a.  The sign
convention i^(p-q) Q > 0 makes every ratio Q_i / -Q_j equal +1 or -1, so
all structure constants are rational.  X_{i,j} and X_{-j,-i} name the same
line; coefficients are always stored on the representative whose index
pair comes first in basis order.
"""

from __future__ import annotations

from fractions import Fraction

from .cmfield import basis_pos
from .cyclotomic import CyclotomicNumber
from .errors import (
    ConductorMismatchError,
    DomainError,
    NotNilpotentError,
    UsageError,
)
from .linalg import SpanBasis


class PolarizationData:
    """The signs epsilon_k with Q_k = epsilon_k * i, for every signed index."""

    def __init__(self, field, epsilons):
        self.field = field
        self.epsilons = dict(epsilons)
        for k in field.signed_indices():
            if self.epsilons.get(k) not in (1, -1):
                raise UsageError(f"missing or bad polarization sign at index {k}")
            if self.epsilons[-k] != -self.epsilons[k]:
                raise UsageError("polarization must be odd under conjugation")

    def q_value(self, k):
        """Q_k as an exact cyclotomic number (a fourth root of unity)."""
        i = CyclotomicNumber.i_unit(self.field.working_conductor)
        return i * self.epsilons[k]

    def ratio(self, i, j):
        """Q_i / -Q_j, always +1 or -1."""
        return -self.epsilons[i] * self.epsilons[j]

    def __eq__(self, other):
        if not isinstance(other, PolarizationData):
            return NotImplemented
        return self.field == other.field and self.epsilons == other.epsilons


def default_polarization(field):
    """Polarization signs from the positivity convention i^(p-q) Q_k > 0.

    For bidegree (p, q) this gives epsilon = (-1)^((p - q + 1) / 2); the
    exponent is an integer because the weight is odd, and conjugate indices
    automatically receive opposite signs.
    """
    eps = {}
    for k in field.signed_indices():
        d = field.grading_value(k)
        eps[k] = -1 if ((d + 1) // 2) % 2 else 1
    return PolarizationData(field, eps)


def canonical_root_index(n, i, j):
    """The stored representative of {(i, j), (-j, -i)} in basis order."""
    a = (basis_pos(n, i), basis_pos(n, j))
    b = (basis_pos(n, -j), basis_pos(n, -i))
    return (i, j) if a <= b else (-j, -i)


def all_root_indices(n):
    """Every canonical root index, sorted by basis position; n(2n+1) of them."""
    signed = list(range(1, n + 1)) + [-k for k in range(1, n + 1)]
    out = [
        (i, j)
        for i in signed
        for j in signed
        if canonical_root_index(n, i, j) == (i, j)
    ]
    out.sort(key=lambda ij: (basis_pos(n, ij[0]), basis_pos(n, ij[1])))
    return out


def bidegree(field, i, j):
    """The grading eigenvalue l of X_{i,j}: it maps degree (p,q) to (p+l, q-l)."""
    p_i, _ = field.bidegree_of_index(i)
    p_j, _ = field.bidegree_of_index(j)
    return p_i - p_j


class AlgebraElement:
    """A finite sum of coefficients against the X basis, canonically indexed."""

    def __init__(self, field, pol, coeffs, _raw=False):
        self.field = field
        self.pol = pol
        if _raw:
            self.coeffs = coeffs
        else:
            self.coeffs = _fold_coeffs(field, pol, coeffs)

    # -- basic structure ------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def support(self):
        n = self.field.n
        return tuple(
            sorted(self.coeffs, key=lambda ij: (basis_pos(n, ij[0]), basis_pos(n, ij[1])))
        )

    def coefficient(self, i, j):
        """Coefficient of X_{i,j}, folding through the identification."""
        n = self.field.n
        canon = canonical_root_index(n, i, j)
        c = self.coeffs.get(canon)
        if c is None:
            return CyclotomicNumber.zero(self.field.working_conductor)
        if canon == (i, j):
            return c
        return c * self.pol.ratio(*canon)

    def _check_compatible(self, other):
        if self.field != other.field or self.pol != other.pol:
            raise UsageError("elements live over different oriented fields")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.field == other.field
            and self.pol == other.pol
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.coeffs)
        for ij, c in other.coeffs.items():
            cur = out.get(ij)
            nxt = c if cur is None else cur + c
            if nxt:
                out[ij] = nxt
            else:
                out.pop(ij, None)
        return AlgebraElement(self.field, self.pol, out, _raw=True)

    def __neg__(self):
        return AlgebraElement(
            self.field, self.pol, {ij: -c for ij, c in self.coeffs.items()}, _raw=True
        )

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = CyclotomicNumber.from_rational(self.field.working_conductor, scalar)
        if not isinstance(scalar, CyclotomicNumber):
            return NotImplemented
        if not scalar:
            return AlgebraElement(self.field, self.pol, {}, _raw=True)
        return AlgebraElement(
            self.field,
            self.pol,
            {ij: c * scalar for ij, c in self.coeffs.items()},
            _raw=True,
        )

    __rmul__ = __mul__

    # -- matrix realization ---------------------------------------------

    def entries(self):
        """Sparse 2n x 2n realization: {(row, col): coefficient} on signed indices."""
        out = {}

        def add(a, b, c):
            key = (a, b)
            cur = out.get(key)
            nxt = c if cur is None else cur + c
            if nxt:
                out[key] = nxt
            else:
                out.pop(key, None)

        for (i, j), c in self.coeffs.items():
            if i == j:
                add(i, i, c)
                add(-i, -i, -c)
            elif j == -i:
                add(i, -i, c + c)
            else:
                add(i, j, c)
                add(-j, -i, c * self.pol.ratio(i, j))
        return out

    def vector(self, coord_of):
        """Coefficients as a sparse coordinate dict for span computations."""
        return {coord_of[ij]: c for ij, c in self.coeffs.items()}

    # -- serialization --------------------------------------------------

    def to_json(self):
        from .cmfield import oriented_to_json

        n = self.field.n
        terms = []
        for i, j in self.support():
            terms.append({"i": i, "j": j, "coeff": self.coeffs[(i, j)].to_json()})
        return {"field": oriented_to_json(self.field), "terms": terms}

    def __repr__(self):
        return f"AlgebraElement(n={self.field.n}, support={self.support()})"


def _fold_coeffs(field, pol, coeffs):
    n = field.n
    M = field.working_conductor
    out = {}
    for (i, j), c in coeffs.items():
        for k in (i, j):
            if not isinstance(k, int) or k == 0 or abs(k) > n:
                raise UsageError(f"signed index {k!r} is out of range for n={n}")
        if isinstance(c, (int, Fraction)):
            c = CyclotomicNumber.from_rational(M, c)
        if c.conductor != M:
            raise ConductorMismatchError(
                f"coefficient conductor {c.conductor} does not match the field's {M}"
            )
        canon = canonical_root_index(n, i, j)
        if canon != (i, j):
            c = c * pol.ratio(i, j)
        cur = out.get(canon)
        nxt = c if cur is None else cur + c
        if nxt:
            out[canon] = nxt
        else:
            out.pop(canon, None)
    return out


def element_from_coeffs(field, pol, coeffs):
    """Build an element from {(i, j): coefficient}; indices fold automatically."""
    return AlgebraElement(field, pol, coeffs)


def zero_element(field, pol):
    return AlgebraElement(field, pol, {}, _raw=True)


def root_vector(field, pol, i, j):
    """The basis vector X_{i,j} (as a stored canonical representative)."""
    return element_from_coeffs(field, pol, {(i, j): 1})


def cartan_elements(field, pol):
    """The n diagonal basis vectors X_{k,k} = E_{k,k} - E_{-k,-k}."""
    return [root_vector(field, pol, k, k) for k in range(1, field.n + 1)]


def element_from_entries(field, pol, entries):
    """Rebuild an element from its sparse realization, checking membership.

    The symplectic condition forces entry(-j, -i) = ratio(i, j) * entry(i, j)
    for every off-diagonal pair and entry(-i, -i) = -entry(i, i) on the
    diagonal; any mismatch means the matrix is outside the algebra.
    """
    n = field.n
    coeffs = {}
    seen = set()
    for (a, b), c in entries.items():
        if (a, b) in seen:
            continue
        if a == b:
            partner = (-a, -a)
            seen.add((a, b))
            seen.add(partner)
            mate = entries.get(partner, CyclotomicNumber.zero(field.working_conductor))
            if mate != -c:
                raise DomainError(
                    f"diagonal entries at {a} break the symplectic pairing",
                    reason="not-in-algebra",
                )
            k = a if a > 0 else -a
            coeffs[(k, k)] = c if a > 0 else -c
        elif b == -a:
            seen.add((a, b))
            coeffs[(a, -a)] = c / 2
        else:
            partner = (-b, -a)
            seen.add((a, b))
            seen.add(partner)
            mate = entries.get(partner, CyclotomicNumber.zero(field.working_conductor))
            if mate != c * pol.ratio(a, b):
                raise DomainError(
                    f"entries at {(a, b)} and {partner} break the symplectic pairing",
                    reason="not-in-algebra",
                )
            canon = canonical_root_index(n, a, b)
            if canon == (a, b):
                coeffs[canon] = c
            else:
                coeffs[canon] = mate
    coeffs = {ij: c for ij, c in coeffs.items() if c}
    return AlgebraElement(field, pol, coeffs, _raw=True)


def element_from_json(obj):
    from .cmfield import oriented_from_json

    if not isinstance(obj, dict) or "field" not in obj or "terms" not in obj:
        raise UsageError("element JSON needs 'field' and 'terms'")
    field = oriented_from_json(obj["field"])
    pol = default_polarization(field)
    coeffs = {}
    for term in obj["terms"]:
        c = CyclotomicNumber.from_json(term["coeff"])
        coeffs[(term["i"], term["j"])] = c
    return element_from_coeffs(field, pol, coeffs)


# -- Galois action ------------------------------------------------------


def _gauge_units(pol):
    """Diagonal change of scale d_k making the group act by bare substitution.

    The fixed choice Q_k = epsilon_k * i is not constant along group orbits,
    so substituting indices alone is not compositional.  There is however a
    rescaled basis on which it is: pick the conjugation-odd quantity
    zeta_m - zeta_m^{-1} and give the index with label a the pairing value
    sigma_a(zeta_m - zeta_m^{-1}).  Those values move exactly as the group
    moves labels, and d_k is the diagonal scale relating our basis to that
    one.  Cyclotomic flavor only; cached on the polarization object.
    """
    cached = getattr(pol, "_gauge_cache", None)
    if cached is not None:
        return cached
    field = pol.field
    m = field.galois.conductor
    M = field.working_conductor
    one = CyclotomicNumber.one(M)
    i_unit = CyclotomicNumber.i_unit(M)
    q0 = CyclotomicNumber.root_of_unity(M, M // m) - CyclotomicNumber.root_of_unity(
        M, M - M // m
    )
    d = {}
    dinv = {}
    for k in range(1, field.n + 1):
        lab = field.index_to_label[k]
        lift = field.coeff_exponent(field.sigma(lab))
        u = q0.galois(lift) / (i_unit * pol.epsilons[k])
        d[k] = u.inverse()
        dinv[k] = u
        d[-k] = one
        dinv[-k] = one
    pol._gauge_cache = (d, dinv)
    return d, dinv


def _gauge_factors(field, pol, perm, exp):
    """Per-index unit factors of the action for one group element, cached."""
    cache = getattr(pol, "_factor_cache", None)
    if cache is None:
        cache = pol._factor_cache = {}
    hit = cache.get(perm)
    if hit is not None:
        return hit
    d, dinv = _gauge_units(pol)
    factor = {}
    cofactor = {}
    for k in field.signed_indices():
        kk = field.act_index(perm, k)
        factor[k] = d[k].galois(exp) * dinv[kk]
        cofactor[k] = dinv[k].galois(exp) * d[kk]
    cache[perm] = (factor, cofactor)
    return factor, cofactor


def galois_act_element(field, perm, v):
    """Move coefficients by the induced automorphism and indices by the label action.

    Each basis vector goes to a unit multiple of the basis vector at the
    image index pair.  The unit is the one forced by compositionality: the
    ratios Q_i / -Q_j are not constant along group orbits, so the bare
    index substitution is corrected through the diagonal gauge of
    ``_gauge_units``.  With that correction the map is a genuine group
    action that commutes with the bracket, and group averaging therefore
    lands in the fixed subspace.  For the abstract flavor no such gauge is
    available (coefficients are plain scalars) and the bare substitution
    is used; its support bookkeeping is still exact, which is all the
    abstract flavor is used for.
    """
    if v.field is not field and v.field != field:
        raise UsageError("element does not belong to the given field")
    exp = field.coeff_exponent(perm)
    if exp is not None:
        factor, cofactor = _gauge_factors(field, v.pol, perm, exp)
    else:
        factor = cofactor = None
    out = {}
    for (i, j), c in v.coeffs.items():
        ii = field.act_index(perm, i)
        jj = field.act_index(perm, j)
        cc = c if exp is None else c.galois(exp)
        if factor is not None:
            cc = cc * factor[i] * cofactor[j]
        canon = canonical_root_index(field.n, ii, jj)
        if canon != (ii, jj):
            cc = cc * v.pol.ratio(ii, jj)
        cur = out.get(canon)
        nxt = cc if cur is None else cur + cc
        if nxt:
            out[canon] = nxt
        else:
            out.pop(canon, None)
    return AlgebraElement(field, v.pol, out, _raw=True)


def is_rational(field, v):
    """Fixed by every generator (hence by the whole group)."""
    for g in field.galois.generators + (field.galois.conjugation,):
        if galois_act_element(field, g, v) != v:
            return False
    return True


def reynolds_average(field, v):
    """Sum of the full Galois orbit of v; the constructive source of rational elements."""
    out = zero_element(field, v.pol)
    for g in field.galois.enumerate_group():
        out = out + galois_act_element(field, g, v)
    return out


# -- bracket and subalgebras -------------------------------------------


def _mat_mult(p, q):
    rows = {}
    for (a, b), x in q.items():
        rows.setdefault(a, []).append((b, x))
    acc = {}
    for (a, b), x in p.items():
        hits = rows.get(b)
        if not hits:
            continue
        for c, y in hits:
            key = (a, c)
            cur = acc.get(key)
            prod = x * y
            nxt = prod if cur is None else cur + prod
            if nxt:
                acc[key] = nxt
            else:
                acc.pop(key, None)
    return acc


def bracket(u, v):
    """The commutator [u, v], computed on realizations and folded back."""
    u._check_compatible(v)
    pu, pv = u.entries(), v.entries()
    uv = _mat_mult(pu, pv)
    vu = _mat_mult(pv, pu)
    for key, x in vu.items():
        cur = uv.get(key)
        nxt = -x if cur is None else cur - x
        if nxt:
            uv[key] = nxt
        else:
            uv.pop(key, None)
    return element_from_entries(u.field, u.pol, uv)


def nilpotency_degree(v):
    """Smallest l with N^l = 0; raises if N^(2n) is still nonzero."""
    ent = v.entries()
    if not ent:
        return 1
    bound = 2 * v.field.n
    power = ent
    degree = 1
    while power:
        if degree >= bound:
            raise NotNilpotentError("the realization is not nilpotent")
        power = _mat_mult(power, ent)
        degree += 1
    return degree


def generated_subalgebra(seeds):
    """Bracket closure of the span of the seeds.

    Returns (dimension, basis elements).  Breadth first: every sweep brackets
    the newly added elements against the whole current basis, extending the
    span, until nothing new appears or the ambient dimension n(2n+1) is hit.
    """
    seeds = list(seeds)
    if not seeds:
        raise UsageError("generated_subalgebra needs at least one seed")
    field, pol = seeds[0].field, seeds[0].pol
    for s in seeds[1:]:
        seeds[0]._check_compatible(s)
    n = field.n
    ambient = n * (2 * n + 1)
    coord_of = {ij: t for t, ij in enumerate(all_root_indices(n))}
    span = SpanBasis()
    basis = []
    new = []
    for s in seeds:
        if span.insert(s.vector(coord_of)):
            basis.append(s)
            new.append(s)
    while new and span.dimension < ambient:
        fresh = []
        for x in new:
            for y in basis:
                z = bracket(x, y)
                if z.is_zero():
                    continue
                if span.insert(z.vector(coord_of)):
                    basis.append(z)
                    fresh.append(z)
                    if span.dimension >= ambient:
                        break
            if span.dimension >= ambient:
                break
        new = fresh
    return span.dimension, tuple(basis)
