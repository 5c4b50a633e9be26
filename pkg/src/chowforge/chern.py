"""Chern-class operations on rank-2 projective-bundle contexts: relative
cotangent classes, principal-parts (jet) bundle Chern classes via the
filtration of a jet bundle by line bundles, line-bundle twists, and
pushforward along a P^1 factor in the subspace convention.

Conventions (validated by the test suite against the pinned pushforward
identities): the fiber class z satisfies z^2 = -c1*z - c2, pi_*(z) = 1,
pi_*(1) = 0, so pushforward extracts the z-linear coefficient of a reduced
element.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rationals import UniPoly
from .ring import Generator, PolyRing, RingElement, RingPresentation, ring_define


class NotReduced(ValueError):
    """Raised when a pushforward input still has fiber exponent > 1."""


@dataclass(frozen=True)
class LineClass:
    """A line bundle represented by its first Chern class."""

    c1: RingElement

    def __post_init__(self):
        if not self.c1.is_zero:
            if not self.c1.is_homogeneous() or self.c1.degree() != 1:
                raise ValueError("a line class must be homogeneous of degree 1")


@dataclass(frozen=True)
class JetSpec:
    """A principal-parts bundle P^e of a twist O(d) along one ruling.

    twist_degree is the fiber degree d as a polynomial in g (e.g. 2g+2 or
    g+1); order is the jet order e >= 0; direction names the ruling the
    derivatives are taken along.
    """

    twist_degree: UniPoly
    order: int
    direction: str = "horizontal"

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("jet order must be >= 0")
        if self.direction not in ("horizontal", "vertical"):
            raise ValueError("direction must be horizontal or vertical")


@dataclass(frozen=True)
class ProjBundleCtx:
    """A P^1-bundle context: quotient presentation, the fiber hyperplane
    class name, and the relative cotangent class (set at construction, since
    it depends on how the bundle is presented)."""

    presentation: RingPresentation
    fiber_class: str
    cotangent: RingElement
    convention_tag: str = field(default="subspace")

    @property
    def ring(self) -> PolyRing:
        return self.presentation.ring

    def gen(self, name: str) -> RingElement:
        return self.ring.gen(name)

    def fiber(self) -> RingElement:
        return self.ring.gen(self.fiber_class)


def standard_context(fiber: str = "z", base: tuple[str, str] = ("c1", "c2")) -> ProjBundleCtx:
    """The rank-2 bundle over the classifying base: generators (c1, c2, z),
    relation z^2 + c1*z + c2, relative cotangent -2z - c1 (Euler sequence)."""
    b1, b2 = base
    # Fiber class first: in grevlex this makes z^2 the leading monomial of
    # the quadratic relation, so normal forms are z-linear (as pushforward needs).
    ring = PolyRing([Generator(fiber, 1), Generator(b1, 1), Generator(b2, 2)])
    z = ring.gen(fiber)
    rel = z * z + ring.gen(b1) * z + ring.gen(b2)
    pres = ring_define(ring, [rel])
    cot = -2 * z - ring.gen(b1)
    return ProjBundleCtx(pres, fiber, pres.normal_form(cot))


@dataclass(frozen=True)
class TwoFactorContext:
    """A product of two P^1-bundles with fiber classes z and w over a base
    with degree-1 classes c1 and d1.  Here each relative cotangent is the
    degree -2 line bundle on its factor (the bundles are presented so that
    the cotangent carries no base twist): -2z horizontally, -2w vertically."""

    presentation: RingPresentation
    horizontal: ProjBundleCtx
    vertical: ProjBundleCtx

    @property
    def ring(self) -> PolyRing:
        return self.presentation.ring

    def gen(self, name: str) -> RingElement:
        return self.ring.gen(name)


def two_factor_context() -> TwoFactorContext:
    """Generators (c1, c2, d1, d2, z, w) with independent quadratic relations
    z^2 + c1*z + c2 and w^2 + d1*w + d2."""
    ring = PolyRing(
        [
            Generator("z", 1),
            Generator("w", 1),
            Generator("c1", 1),
            Generator("c2", 2),
            Generator("d1", 1),
            Generator("d2", 2),
        ]
    )
    z, w = ring.gen("z"), ring.gen("w")
    rels = [
        z * z + ring.gen("c1") * z + ring.gen("c2"),
        w * w + ring.gen("d1") * w + ring.gen("d2"),
    ]
    pres = ring_define(ring, rels)
    horizontal = ProjBundleCtx(pres, "z", pres.normal_form(-2 * z))
    vertical = ProjBundleCtx(pres, "w", pres.normal_form(-2 * w))
    return TwoFactorContext(pres, horizontal, vertical)


def relative_cotangent_class(ctx: ProjBundleCtx) -> LineClass:
    """First Chern class of the relative cotangent bundle of the context."""
    return LineClass(ctx.cotangent)


def twist_class(spec: JetSpec, ctx: ProjBundleCtx) -> RingElement:
    """c1 of the twisting bundle O(d) on the context's fiber."""
    return ctx.fiber().scale(spec.twist_degree)


def jet_line_factors(spec: JetSpec, ctx: ProjBundleCtx, line: RingElement | None = None):
    """The filtration line classes c1(O(d) tensor Omega^k), k = 0..e.

    `line` overrides the default twist class (used for bundles, like the
    bidegree-(g+1, 2) twist, whose c1 involves both fiber classes)."""
    base = line if line is not None else twist_class(spec, ctx)
    cot = ctx.cotangent
    return [base + cot.scale(k) for k in range(spec.order + 1)]


def jet_total_chern(spec: JetSpec, ctx: ProjBundleCtx, line: RingElement | None = None) -> RingElement:
    """Total Chern class prod_k (1 + c1(O(d) tensor Omega^k)), reduced."""
    acc = ctx.ring.one()
    for f in jet_line_factors(spec, ctx, line):
        acc = acc * (ctx.ring.one() + f)
    return ctx.presentation.normal_form(acc)


def jet_top_chern(spec: JetSpec, ctx: ProjBundleCtx, line: RingElement | None = None) -> RingElement:
    """Top Chern class (degree e+1 part of the total class), reduced."""
    acc = ctx.ring.one()
    for f in jet_line_factors(spec, ctx, line):
        acc = acc * f
    return ctx.presentation.normal_form(acc)


def pushforward_p1(e: RingElement, ctx: ProjBundleCtx) -> RingElement:
    """Pushforward along the context's P^1 fiber: with e = a + b*z reduced,
    returns b.  Satisfies pi_*(1) = 0 and pi_*(z) = 1."""
    e = ctx.presentation.normal_form(e)
    fi = ctx.ring.index(ctx.fiber_class)
    out = {}
    for exps, c in e.terms.items():
        k = exps[fi]
        if k > 1:
            raise NotReduced(f"fiber exponent {k} > 1 in pushforward input")
        if k == 1:
            new = list(exps)
            new[fi] = 0
            out[tuple(new)] = c
    return RingElement(ctx.ring, out)


def section_pullbacks(ctx: TwoFactorContext) -> dict:
    """Substitution rules for restricting along the universal section of a
    two-factor context, derived from the pushforward identity
    sigma^* O(1) = pi_*(c1(O(1))^2): z -> -c1, w -> -d1."""
    z, w = ctx.gen("z"), ctx.gen("w")
    return {
        "z": pushforward_p1(z * z, ctx.horizontal),
        "w": pushforward_p1(w * w, ctx.vertical),
    }


def apply_pullback(e: RingElement, rules: dict) -> RingElement:
    """Apply section-pullback substitution rules to an element."""
    return e.substitute(rules, target=e.ring)
