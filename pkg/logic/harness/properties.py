"""
The invariant suite run by ``setconj props``.

Every property draws its instances from its own SplitMix64 stream, derived from the run seed and the
property's position in ``PROPERTIES``, so a property replays identically whether it runs alone, with
the others, inline or in a worker process.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

import shared.constants as constants
from logic.conaffine.conaffine import (ConAffine, additivity_holds, halfspace, is_minorant, scaling_holds,
                                       sublinearity_holds)
from logic.duality_theorems.fenchel_rockafellar import fenchel_rockafellar
from logic.extended_reals.ext_real import (NEG_INF, POS_INF, PROBES, ZERO, ext_inf, ext_sup, inf_add, inf_residual,
                                           negate, residual_by_search, sup_add, sup_residual)
from logic.harness import fixtures
from logic.harness.sampling import SplitMix64
from logic.polyhedra.polyhedron import Polyhedron
from logic.polyhedra.rational import zero_vector
from logic.polyhedra.regions import covers, union_covers
from logic.scalar_calculus.chain_rule import chain_rule_scalar
from logic.scalar_calculus.operations import (INF_ADDITION, affine_minorant_envelope, biconjugate, cl_co, fn_add,
                                              inf_convolve, is_minorant as scalar_is_minorant, pointwise_max,
                                              pointwise_min, precompose, pushforward, same_function)
from logic.scalar_calculus.scalar_fn import ScalarFn
from logic.setvalued_calculus.calculus import (fn_inf_convolve, fn_lattice_inf, fn_lattice_sup, fn_precompose,
                                               fn_pushforward, fn_sum)
from logic.setvalued_calculus.conjugate import (SetConjugate, biconjugate as set_biconjugate,
                                                conjugate_by_definition, dual_representation)
from logic.setvalued_calculus.set_fn import (SetFn, cl_co_fn, facet_directions, same_set_fn, sample_points,
                                             scalarize, setify)
from logic.upper_sets.upper_set import (UpperSet, closed_convex_hull, includes, lattice_inf, lattice_sup,
                                        minkowski_add, residual, s_dual, scale, set_equal)

logger = logging.getLogger(__name__)

CHAIN_KINDS = ("max-affine", "max-affine-on-box", "union", "indicator", "constant")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    seed: int
    cases: int
    checked: int
    failures: int
    first_failure: Optional[Dict[str, object]] = None
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0


class _Tally:
    """
    Counts checks and keeps the first counterexample
    """

    def __init__(self, name: str, seed: int):
        self.name = name
        self.seed = seed
        self.checked = 0
        self.failures = 0
        self.first_failure = None

    def check(self, ok: bool, label: str, case: int, **witness) -> bool:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = dict(witness, check=label, case=case)
                logger.warning("%s: %s failed at case %d", self.name, label, case)
        return ok

    def result(self, cases: int, **notes) -> PropertyResult:
        return PropertyResult(self.name, self.seed, cases, self.checked, self.failures, self.first_failure, notes)


def _is_constant_infinite(f: ScalarFn) -> bool:
    f = f.normalized()
    return f.is_plus_inf() or (not f.pieces and covers(f.minus_inf_region, Polyhedron.whole(f.domain_dim)))


def _positive(rng: SplitMix64) -> Fraction:
    return Fraction(rng.integer(1, 4), rng.integer(1, 3))


def ext_real_laws(tally: _Tally, rng: SplitMix64, count: int):
    for p in PROBES:
        tally.check(inf_add(POS_INF, p) == POS_INF, "+inf dominates inf-addition", 0, r=p)
        tally.check(sup_add(NEG_INF, p) == NEG_INF, "-inf dominates sup-addition", 0, r=p)
    for case in range(count):
        r, s, t = (fixtures.random_ext_real(rng) for _ in range(3))
        family = [fixtures.random_ext_real(rng) for _ in range(rng.integer(1, 5))]
        w = dict(r=r, s=s, t=t)
        tally.check((r <= inf_add(s, t)) == (inf_residual(r, s) <= t), "inf adjunction", case, **w)
        tally.check((sup_add(s, t) <= r) == (t <= sup_residual(r, s)), "sup adjunction", case, **w)
        tally.check(negate(inf_add(r, s)) == sup_add(negate(s), negate(r)), "-(r (+) s)", case, **w)
        tally.check(inf_add(r, negate(s)) == sup_residual(r, s), "r (+) -s", case, **w)
        tally.check(sup_add(r, negate(s)) == inf_residual(r, s), "r [+] -s", case, **w)
        tally.check(negate(sup_add(r, s)) == inf_add(negate(s), negate(r)), "-(r [+] s)", case, **w)
        tally.check(negate(negate(r)) == r, "negation involution", case, **w)
        tally.check(inf_residual(r, s) == residual_by_search(r, s, "inf"), "inf residual by search", case, **w)
        tally.check(sup_residual(r, s) == residual_by_search(r, s, "sup"), "sup residual by search", case, **w)
        low, high = min(s, t), max(s, t)
        tally.check(inf_add(r, low) <= inf_add(r, high) and sup_add(r, low) <= sup_add(r, high),
                    "monotonicity", case, **w)
        w = dict(r=r, family=family)
        tally.check(ext_inf(inf_add(r, m) for m in family) == inf_add(r, ext_inf(family)),
                    "inf over inf-addition", case, **w)
        tally.check(ext_sup(sup_add(r, m) for m in family) == sup_add(r, ext_sup(family)),
                    "sup over sup-addition", case, **w)
        tally.check(ext_sup(inf_add(r, m) for m in family) <= inf_add(r, ext_sup(family)),
                    "sup over inf-addition", case, **w)
        tally.check(ext_inf(sup_add(r, m) for m in family) <= sup_add(r, ext_inf(family)),
                    "inf over sup-addition", case, **w)
    return tally.result(count)


def scalar_biconjugation(tally: _Tally, rng: SplitMix64, count: int):
    for case in range(count):
        g = fixtures.random_scalar_fn(rng, rng.integer(1, 2))
        hull, bi = cl_co(g), biconjugate(g)
        tally.check(same_function(affine_minorant_envelope(g), hull), "minorant envelope is cl co", case, g=g)
        if hull.is_proper() or _is_constant_infinite(hull):
            tally.check(same_function(bi, hull), "g** = cl co g", case, g=g, biconjugate=bi, hull=hull)
        else:
            tally.check(same_function(bi, ScalarFn.constant(g.domain_dim, NEG_INF)), "improper hull gives -inf",
                        case, g=g, biconjugate=bi)
    return tally.result(count)


def scalar_chain_rule(tally: _Tally, rng: SplitMix64, count: int):
    qualified = 0
    for case in range(count):
        n, k = rng.integer(1, 2), rng.integer(1, 2)
        if case % 2 == 0:
            g, f = fixtures.random_scalar_fn(rng, n, "max-affine"), fixtures.random_scalar_fn(rng, k, "max-affine")
        else:
            g, f = fixtures.random_scalar_fn(rng, n, rng.choice(CHAIN_KINDS)), \
                fixtures.random_scalar_fn(rng, k, rng.choice(CHAIN_KINDS))
        if case % 4 == 1:
            f = ScalarFn.constant(k, POS_INF)
        t, s = fixtures.random_matrix(rng, k, n), fixtures.random_matrix(rng, n, k)
        report = chain_rule_scalar(g, f, t, s)
        if report.part("d").qualification is not None:
            qualified += 1
        for part in report.parts:
            tally.check(part.passed, "part ({})".format(part.part), case, g=g, f=f, T=t, S=s,
                        verdict=part.verdict, witnesses=part.witnesses)
    return tally.result(count, qualified=qualified)


def upper_set_lattice(tally: _Tally, rng: SplitMix64, count: int):
    for case in range(count):
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        a, b, c = (fixtures.random_upper_set(rng, cone) for _ in range(3))
        z = rng.vector(cone.dim)
        w = dict(a=a, b=b, c=c)
        tally.check(residual(a, b).contains(z) == includes(a, minkowski_add(b, UpperSet.translate_cone(z, cone))),
                    "residual adjunction", case, z=z, **w)
        tally.check(set_equal(minkowski_add(a, lattice_inf([b, c], cone)),
                              lattice_inf([minkowski_add(a, b), minkowski_add(a, c)], cone)),
                    "sum over union", case, **w)
        tally.check(includes(lattice_sup([minkowski_add(a, b), minkowski_add(a, c)], cone),
                             minkowski_add(a, lattice_sup([b, c], cone))),
                    "sum over intersection", case, **w)

        r, q = _positive(rng), _positive(rng)
        tally.check(set_equal(scale(r, minkowski_add(a, b)), minkowski_add(scale(r, a), scale(r, b))),
                    "r(A + B) = rA + rB", case, r=r, **w)
        tally.check(set_equal(scale(r, scale(q, a)), scale(r * q, a)), "r(qA) = (rq)A", case, r=r, q=q, **w)
        tally.check(set_equal(scale(1, a), a), "1A = A", case, **w)
        tally.check(set_equal(scale(0, a), UpperSet.from_polyhedron(cone.polyhedron, cone)), "0A = C", case, **w)

        first = UpperSet.halfspace(fixtures.random_zstar(rng, cone), cone, rng.rational())
        second = UpperSet.halfspace(fixtures.random_zstar(rng, cone), cone, rng.rational())
        w = dict(w=first, v=second)
        tally.check(set_equal(s_dual(minkowski_add(s_dual(first), second)), residual(first, second)),
                    "s(s(w) + v) = w -. v", case, **w)
        tally.check(set_equal(s_dual(s_dual(first)), first), "s involution on halfspaces", case, **w)
        theta = UpperSet.from_polyhedron(cone.polyhedron, cone)
        tally.check(set_equal(s_dual(first), residual(s_dual(theta), first)), "s(w) = s(C) -. w", case, **w)
        shifted = UpperSet.translate_cone(rng.vector(cone.dim), cone)
        tally.check(set_equal(s_dual(s_dual(shifted)), shifted), "s involution on translated cones", case, a=shifted)

        hull = closed_convex_hull(a)
        tally.check(set_equal(hull, closed_convex_hull(minkowski_add(hull, theta))), "cl co hull is closed upward",
                    case, a=a)
    return tally.result(count)


def _fiber_points(g: SetFn, rng: SplitMix64, count: int):
    points = sample_points(g)[:count]
    while len(points) < count:
        points.append(rng.vector(g.x_dim))
    return points


def scalarization_identities(tally: _Tally, rng: SplitMix64, count: int):
    for case in range(count):
        n, k = rng.integer(1, 2), rng.integer(1, 2)
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        g, h = fixtures.random_set_fn(rng, n, cone), fixtures.random_set_fn(rng, n, cone)
        f = fixtures.random_set_fn(rng, k, cone)
        t, a = fixtures.random_matrix(rng, k, n), fixtures.random_matrix(rng, n, k)
        combined = {
            "sum": fn_sum(g, h),
            "precompose": fn_precompose(f, t),
            "union": fn_lattice_inf([g, h], n, cone),
            "intersection": fn_lattice_sup([g, h], n, cone),
            "inf-convolution": fn_inf_convolve(g, h),
            "pushforward": fn_pushforward(a, f),
        }
        for _ in range(3):
            z_star = fixtures.random_zstar(rng, cone)
            phi_g, phi_h, phi_f = scalarize(g, z_star), scalarize(h, z_star), scalarize(f, z_star)
            w = dict(g=g, h=h, z_star=z_star)
            tally.check(same_function(scalarize(combined["sum"], z_star), fn_add(phi_g, phi_h, INF_ADDITION)),
                        "scalarization of a sum", case, **w)
            tally.check(same_function(scalarize(combined["precompose"], z_star), precompose(phi_f, t)),
                        "scalarization of f T", case, f=f, T=t, z_star=z_star)
            tally.check(same_function(scalarize(combined["union"], z_star), pointwise_min(phi_g, phi_h)),
                        "scalarization of a union", case, **w)
            tally.check(scalar_is_minorant(pointwise_max(phi_g, phi_h), scalarize(combined["intersection"], z_star)),
                        "scalarization of an intersection", case, **w)
            tally.check(same_function(scalarize(combined["inf-convolution"], z_star),
                                      inf_convolve(phi_g, phi_h, INF_ADDITION)),
                        "scalarization of an inf-convolution", case, **w)
            tally.check(same_function(scalarize(combined["pushforward"], z_star), pushforward(a, phi_f)),
                        "scalarization of A f", case, f=f, A=a, z_star=z_star)
            tally.check(union_covers(setify(cl_co(phi_g), z_star, cone).graph_pieces(), g.graph_pieces()),
                        "setify of a minorant dominates", case, **w)
            round_trip = setify(phi_g, z_star, cone)
            for x in _fiber_points(g, rng, 5):
                expected = minkowski_add(g.evaluate(x), UpperSet.halfspace(z_star, cone)).closure()
                tally.check(set_equal(round_trip.evaluate(x), expected), "setify(scalarize(g)) = cl(g + H)", case,
                            x=x, **w)
    return tally.result(count)


def set_biconjugation(tally: _Tally, rng: SplitMix64, count: int):
    for case in range(count):
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        n = rng.integer(1, 2)
        g = fixtures.random_set_fn(rng, n, cone, fixtures.SET_KINDS[case % len(fixtures.SET_KINDS)])
        directions = facet_directions(g)
        full = set_biconjugate(g, directions)
        tally.check(same_set_fn(full, cl_co_fn(g)), "g** = cl co g", case, g=g, directions=directions)
        partial = set_biconjugate(g, [(zero_vector(n), zero_vector(cone.dim))] + directions[::2])
        tally.check(union_covers(partial.graph_pieces(), full.graph_pieces()), "fewer directions, larger g**",
                    case, g=g)
    return tally.result(count)


def hull_invariance(tally: _Tally, rng: SplitMix64, count: int):
    for case in range(count):
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        n = rng.integer(1, 2)
        g = fixtures.random_set_fn(rng, n, cone)
        conj, hull_conj = SetConjugate(g), SetConjugate(cl_co_fn(g))
        samples = sample_points(g)
        duals = facet_directions(g) + fixtures.random_duals(rng, n, cone, 3)
        for x_star, z_star in duals:
            value = conj(x_star, z_star)
            tally.check(set_equal(hull_conj(x_star, z_star), value), "(cl co g)* = g*", case, g=g, x_star=x_star,
                        z_star=z_star)
            tally.check(includes(conjugate_by_definition(g, x_star, z_star, samples), value),
                        "defining intersection contains g*", case, g=g, x_star=x_star, z_star=z_star)
    return tally.result(count)


def non_closed_scalarization(tally: _Tally, rng: SplitMix64, count: int):
    g = fixtures.not_closed()
    phi = scalarize(g, (-1,))
    tally.check(phi.evaluate((0,)) == POS_INF, "phi(0) = +inf", 0, value=phi.evaluate((0,)))
    tally.check(phi.evaluate((1,)) == ZERO, "phi(1) = 0", 0, value=phi.evaluate((1,)))
    tally.check(cl_co(phi).evaluate((0,)) == ZERO, "(cl phi)(0) = 0", 0, value=cl_co(phi).evaluate((0,)))
    return tally.result(1)


def fenchel_rockafellar_duality(tally: _Tally, rng: SplitMix64, count: int):
    qualified = 0
    for case in range(count):
        n, k = rng.integer(1, 2), rng.integer(1, 2)
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        if case % 2 == 0:
            g = fixtures.random_set_fn(rng, n, cone, "shifted-cone")
            f = fixtures.random_set_fn(rng, k, cone, "shifted-cone")
        else:
            kinds = fixtures.PROPER_CONVEX_KINDS + ("union", "empty")
            g = fixtures.random_set_fn(rng, n, cone, rng.choice(kinds))
            f = fixtures.random_set_fn(rng, k, cone, rng.choice(kinds))
        t = fixtures.random_matrix(rng, k, n)
        report = fenchel_rockafellar(g, f, t, cone.dual_generators, seed=rng.next_u64())
        if any(check.qualification is not None for check in report.directions):
            qualified += 1
        for check in report.directions:
            tally.check(check.weak_duality, "weak duality", case, g=g, f=f, T=t, z_star=check.z_star,
                        primal=report.p, dual=check.d_sample)
            tally.check(check.achieved is not False, "strong duality", case, g=g, f=f, T=t, z_star=check.z_star,
                        y_star=check.y_star, gap=check.gap_witness)
        tally.check(report.representation_verified is not False, "P from the dual values", case, g=g, f=f, T=t)
    tally.check(10 * qualified >= 3 * count, "qualified share", count, qualified=qualified)
    return tally.result(count, qualified=qualified)


def conaffine_algebra(tally: _Tally, rng: SplitMix64, count: int):
    for case in range(count):
        n = rng.integer(1, 2)
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        x_star, y_star, x, y = rng.vector(n), rng.vector(n), rng.vector(n), rng.vector(n)
        r, t = rng.rational(), _positive(rng)
        z_star = fixtures.random_zstar(rng, cone)
        any_z = zero_vector(cone.dim) if rng.chance(1, 5) else z_star
        w = dict(x_star=x_star, y_star=y_star, r=r, z_star=z_star, x=x, y=y, t=t)
        tally.check(sublinearity_holds(x_star, any_z, cone, x, y), "sublinearity", case, **dict(w, z_star=any_z))
        tally.check(additivity_holds(x_star, y_star, r, z_star, cone, x), "additivity", case, **w)
        tally.check(scaling_holds(x_star, r, any_z, cone, t, x), "scaling", case, **dict(w, z_star=any_z))
        tally.check(set_equal(ConAffine(x_star, 0, z_star, cone)(zero_vector(n)), halfspace(z_star, cone)),
                    "S(0) = H(z*)", case, **w)
    return tally.result(count)


def dual_representation_property(tally: _Tally, rng: SplitMix64, count: int):
    improper = max(1, count // 5)
    for case in range(count + improper):
        cone = fixtures.random_cone(rng, rng.integer(1, 2))
        n = rng.integer(1, 2)
        if case < count:
            g = fixtures.random_set_fn(rng, n, cone, fixtures.PROPER_CONVEX_KINDS[case % 3])
            expected = "proper"
        else:
            g = SetFn(n, cone, (), (fixtures.random_box(rng, n),))
            expected = "improper"
        rep = dual_representation(g)
        tally.check(rep.branch == expected, "branch", case, g=g, branch=rep.branch)
        tally.check(same_set_fn(rep.fn, g), "g from its conaffine minorants", case, g=g, minorants=rep.minorants)
        tally.check(all(is_minorant(s, g) for s in rep.minorants), "minorants lie below g", case, g=g)
    return tally.result(count + improper)


# name -> (case count at FULL_ITERS, property)
PROPERTIES: Dict[str, Tuple[int, Callable]] = {
    "ext-real-laws": (10000, ext_real_laws),
    "scalar-biconjugation": (200, scalar_biconjugation),
    "scalar-chain-rule": (100, scalar_chain_rule),
    "upper-set-lattice": (100, upper_set_lattice),
    "scalarization-identities": (100, scalarization_identities),
    "set-biconjugation": (100, set_biconjugation),
    "hull-invariance": (50, hull_invariance),
    "non-closed-scalarization": (1, non_closed_scalarization),
    "fenchel-rockafellar": (100, fenchel_rockafellar_duality),
    "conaffine-algebra": (100, conaffine_algebra),
    "dual-representation": (50, dual_representation_property),
}


def scaled_count(base: int, iters: int) -> int:
    return max(1, base * iters // constants.FULL_ITERS)


def property_seed(seed: int, name: str) -> int:
    rng = SplitMix64(seed)
    for registered in PROPERTIES:
        value = rng.next_u64()
        if registered == name:
            return value
    raise KeyError(name)


def run_property(name: str, seed: int, iters: int) -> PropertyResult:
    """
    Run one property of the suite

    :param name: key of ``PROPERTIES``
    :param seed: run seed; the property's own stream is derived from it
    :param iters: scales every case count, ``FULL_ITERS`` gives the full counts
    :return: counts and the first counterexample, if any
    :rtype: PropertyResult
    """
    base, check = PROPERTIES[name]
    own_seed = property_seed(seed, name)
    count = scaled_count(base, iters)
    logger.info("property %s: %d cases", name, count)
    return check(_Tally(name, own_seed), SplitMix64(own_seed), count)
