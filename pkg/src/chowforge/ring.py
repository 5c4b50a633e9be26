"""Sparse multivariate polynomials over RatFunc in named graded generators,
quotient-ring presentations with a Buchberger normal-form engine, and graded
component dimension queries.

Monomial order: graded-reverse-lexicographic, weighted by generator degrees,
over the declared generator order.  Presentations compute their basis eagerly
and are immutable afterwards; all queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .rationals import RatFunc, UniPoly, ratfunc_str


class UnknownGenerator(KeyError):
    """Raised when an element mentions a generator a ring does not declare."""


class NonterminatingHint(RuntimeError):
    """Raised when basis completion exceeds the configured size bound."""


class InhomogeneousRelations(ValueError):
    """Raised by graded dimension queries on inhomogeneous presentations."""


@dataclass(frozen=True)
class Generator:
    """A named ring generator with a positive Chow grading."""

    name: str
    degree: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("generator degree must be >= 1")


def _coerce_coeff(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, (int, Fraction, UniPoly)):
        return RatFunc(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class PolyRing:
    """Free polynomial ring over RatFunc on an ordered list of generators."""

    __slots__ = ("generators", "_index", "_weights")

    def __init__(self, generators):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_index", {g.name: i for i, g in enumerate(gens)})
        object.__setattr__(self, "_weights", tuple(g.degree for g in gens))

    def __setattr__(self, name, value):
        raise AttributeError("PolyRing is immutable")

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def weighted_degree(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self._weights))

    # -- element constructors ----------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.const(1)

    def const(self, c) -> "RingElement":
        c = _coerce_coeff(c)
        if c.is_zero:
            return self.zero()
        return RingElement(self, {(0,) * self.ngens: c})

    def gen(self, name: str) -> "RingElement":
        i = self.index(name)
        exps = [0] * self.ngens
        exps[i] = 1
        return RingElement(self, {tuple(exps): RatFunc(1)})

    def element(self, terms: dict) -> "RingElement":
        """Build from {exponent tuple: coefficient}; zero coefficients dropped."""
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != self.ngens:
                raise ValueError("exponent tuple length mismatch")
            c = _coerce_coeff(c)
            if not c.is_zero:
                clean[exps] = c
        return RingElement(self, clean)

    def monomial_cmp(self, a, b) -> int:
        """Graded reverse lexicographic comparison of exponent tuples."""
        da, db = self.weighted_degree(a), self.weighted_degree(b)
        if da != db:
            return -1 if da < db else 1
        for x, y in zip(reversed(a), reversed(b)):
            if x != y:
                # Smaller exponent in the rightmost differing slot wins.
                return 1 if x < y else -1
        return 0

    def sort_key(self):
        return cmp_to_key(self.monomial_cmp)

    def import_element(self, e: "RingElement") -> "RingElement":
        """Re-express an element of a name-compatible ring in this ring."""
        if e.ring is self or e.ring == self:
            return RingElement(self, dict(e.terms))
        src = e.ring
        mapping: dict[int, int] = {}

        def target_index(i: int) -> int:
            if i not in mapping:
                g = src.generators[i]
                j = self.index(g.name)
                if self.generators[j].degree != g.degree:
                    raise UnknownGenerator(f"{g.name}: degree mismatch")
                mapping[i] = j
            return mapping[i]

        terms = {}
        for exps, c in e.terms.items():
            new = [0] * self.ngens
            for i, ex in enumerate(exps):
                if ex:
                    new[target_index(i)] = ex
            terms[tuple(new)] = c
        return RingElement(self, terms)


class RingElement:
    """Sparse polynomial: map from exponent tuples to RatFunc coefficients.

    Mixed-degree elements are allowed; degree() reports the top weighted degree.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Top weighted degree; -1 for the zero element."""
        if self.is_zero:
            return -1
        return max(self.ring.weighted_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.weighted_degree(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "RingElement":
        return RingElement(
            self.ring,
            {e: c for e, c in self.terms.items() if self.ring.weighted_degree(e) == d},
        )

    def coefficient(self, exps) -> RatFunc:
        return self.terms.get(tuple(exps), RatFunc(0))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            return self.ring.import_element(other)
        if isinstance(other, (int, Fraction, UniPoly, RatFunc)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e, RatFunc(0)) + c
            if s.is_zero:
                terms.pop(e, None)
            else:
                terms[e] = s
        return RingElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, RatFunc(0)) + c1 * c2
                if s.is_zero:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return RingElement(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "RingElement":
        c = _coerce_coeff(c)
        if c.is_zero:
            return self.ring.zero()
        return RingElement(self.ring, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (RingElement, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- structural operations ------------------------------------------------

    def substitute(self, mapping: dict, target: PolyRing | None = None) -> "RingElement":
        """Replace generators by elements; unmapped generators must exist in
        the target ring under the same name."""
        if target is None:
            for v in mapping.values():
                if isinstance(v, RingElement):
                    target = v.ring
                    break
            else:
                target = self.ring
        acc = target.zero()
        for exps, c in self.terms.items():
            term = target.const(c)
            for i, ex in enumerate(exps):
                if ex == 0:
                    continue
                name = self.ring.generators[i].name
                if name in mapping:
                    rep = mapping[name]
                    if not isinstance(rep, RingElement):
                        rep = target.const(rep)
                    elif rep.ring is not target and rep.ring != target:
                        rep = target.import_element(rep)
                else:
                    rep = target.gen(name)
                term = term * rep**ex
            acc = acc + term
        return acc

    def specialize(self, g0) -> "RingElement":
        """Evaluate every coefficient at a concrete genus (exact)."""
        terms = {}
        for e, c in self.terms.items():
            v = c(g0)
            if v != 0:
                terms[e] = RatFunc(v)
        return RingElement(self.ring, terms)

    def leading_exponent(self):
        if self.is_zero:
            raise ValueError("zero element has no leading term")
        return max(self.terms, key=self.ring.sort_key())

    def leading_coefficient(self) -> RatFunc:
        return self.terms[self.leading_exponent()]

    def monic(self) -> "RingElement":
        if self.is_zero:
            return self
        return self.scale(self.leading_coefficient().invert())

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        return element_str(self)

    def __repr__(self):
        return f"RingElement({element_str(self)})"


def _coeff_str(c: RatFunc) -> tuple[str, bool]:
    """Render a coefficient; second value says whether it is a bare rational."""
    s = ratfunc_str(c)
    bare = c.is_polynomial() and c.num.degree <= 0
    return s, bare


def element_str(e: RingElement) -> str:
    """Canonical serialization, e.g. "(8*g^3+12*g^2+4*g)*c1^2+(-8*g^3+8*g)*c2".

    Terms in descending monomial order; coefficients involving g or a
    denominator are parenthesized; bare rational constants are inlined.
    """
    if e.is_zero:
        return "0"
    ring = e.ring
    key = ring.sort_key()
    parts = []
    for exps in sorted(e.terms, key=key, reverse=True):
        c = e.terms[exps]
        mono = "*".join(
            g.name if ex == 1 else f"{g.name}^{ex}"
            for g, ex in zip(ring.generators, exps)
            if ex > 0
        )
        s, bare = _coeff_str(c)
        if not mono:
            term = s if bare else f"({s})"
        elif bare and s == "1":
            term = mono
        elif bare and s == "-1":
            term = f"-{mono}"
        elif bare:
            term = f"{s}*{mono}"
        else:
            term = f"({s})*{mono}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += term if term.startswith("-") else "+" + term
    return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(e: RingElement, basis: list[RingElement]) -> RingElement:
    """Full normal form of e modulo a list of monic polynomials."""
    ring = e.ring
    key = ring.sort_key()
    done: dict = {}
    work = dict(e.terms)
    while work:
        exps = max(work, key=key)
        coeff = work.pop(exps)
        for b in basis:
            lead = b.leading_exponent()
            if _divides(lead, exps):
                shift = tuple(x - y for x, y in zip(exps, lead))
                # Subtract coeff * x^shift * b (b is monic).
                for be, bc in b.terms.items():
                    te = tuple(x + y for x, y in zip(shift, be))
                    if te == exps:
                        continue
                    s = work.get(te, RatFunc(0)) - coeff * bc
                    if s.is_zero:
                        work.pop(te, None)
                    else:
                        work[te] = s
                break
        else:
            done[exps] = coeff
    return RingElement(ring, done)


def _s_polynomial(f: RingElement, g: RingElement) -> RingElement:
    lf, lg = f.leading_exponent(), g.leading_exponent()
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    ring = f.ring
    mf = ring.element({tuple(a - b for a, b in zip(lcm, lf)): RatFunc(1)})
    mg = ring.element({tuple(a - b for a, b in zip(lcm, lg)): RatFunc(1)})
    return mf * f.monic() - mg * g.monic()


def _buchberger(relations: list[RingElement], max_basis: int) -> list[RingElement]:
    basis = [r.monic() for r in relations if not r.is_zero]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        li = basis[i].leading_exponent()
        lj = basis[j].leading_exponent()
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        s = _reduce(_s_polynomial(basis[i], basis[j]), basis)
        if s.is_zero:
            continue
        basis.append(s.monic())
        if len(basis) > max_basis:
            raise NonterminatingHint(
                f"basis exceeded {max_basis} elements; input looks pathological"
            )
        k = len(basis) - 1
        pairs.extend((i2, k) for i2 in range(k))
    # Autoreduce: minimal, fully reduced, monic basis.  When several elements
    # share a leading monomial, exactly one representative is kept.
    removed = [False] * len(basis)
    leads = [b.leading_exponent() for b in basis]
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i == j or removed[j]:
                continue
            if _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i):
                removed[i] = True
                break
    reduced = [b for b, gone in zip(basis, removed) if not gone]
    final = []
    for i, b in enumerate(reduced):
        others = reduced[:i] + reduced[i + 1 :]
        r = _reduce(b, others)
        if not r.is_zero:
            final.append(r.monic())
    if final:
        key = final[0].ring.sort_key()
        final.sort(key=lambda b: key(b.leading_exponent()), reverse=True)
    return final


class RingPresentation:
    """Quotient-ring description: generators, relations, cached reduced basis.

    The basis is computed eagerly; normal forms are unique (confluence is
    certified by S-polynomial reduction during completion and re-checked by
    the test suite).
    """

    __slots__ = ("ring", "relations", "groebner_basis")

    def __init__(self, ring: PolyRing, relations, max_basis: int = 200):
        rels = [ring.import_element(r) for r in relations]
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "groebner_basis", tuple(_buchberger(rels, max_basis)))

    def __setattr__(self, name, value):
        raise AttributeError("RingPresentation is immutable")

    def normal_form(self, e: RingElement) -> RingElement:
        e = self.ring.import_element(e)
        return _reduce(e, list(self.groebner_basis))

    def is_zero(self, e: RingElement) -> bool:
        return self.normal_form(e).is_zero

    def graded_component_dim(self, d: int) -> int:
        """Dimension over the coefficient field of the degree-d component:
        the count of standard monomials of weighted degree d."""
        for r in self.relations:
            if not r.is_homogeneous():
                raise InhomogeneousRelations(str(r))
        leads = [b.leading_exponent() for b in self.groebner_basis]
        weights = [g.degree for g in self.ring.generators]
        count = 0
        for exps in _weighted_tuples(weights, d):
            if not any(_divides(l, exps) for l in leads):
                count += 1
        return count

    def specialize(self, g0) -> "RingPresentation":
        """The same presentation with coefficients evaluated at a genus."""
        return RingPresentation(self.ring, [r.specialize(g0) for r in self.relations])


def _weighted_tuples(weights, d, prefix=()):
    if not weights:
        if d == 0:
            yield prefix
        return
    w = weights[0]
    for e in range(d // w + 1):
        yield from _weighted_tuples(weights[1:], d - e * w, prefix + (e,))


def ring_define(gens, rels, max_basis: int = 200) -> RingPresentation:
    """Build a presentation from generators and relation elements."""
    ring = gens if isinstance(gens, PolyRing) else PolyRing(gens)
    return RingPresentation(ring, rels, max_basis=max_basis)
