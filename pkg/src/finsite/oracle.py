"""Exhaustive invariant checks for one finite category.

The brute-force helpers here deliberately avoid the closed formulas used by
the main modules: negation is found by searching for the largest disjoint
sieve, generation by intersecting every enumerated topology, and so on.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .fincat import FiniteCategory, is_groupoid, opposite, satisfies_right_ore
from .presheaf import (
    Presheaf,
    Subpresheaf,
    close_subobject,
    closed_sub_not,
    densifying_topology,
    element_sieve,
    empty_sub,
    enumerate_subpresheaves,
    fixture_presheaves,
    full_sub,
    is_closed_subobject,
    is_dense_mono,
    sieve_to_subpresheaf,
    sub_implies,
    sub_join,
    sub_meet,
    sub_not,
    yoneda,
)
from .reduct import (
    booleanization,
    booleanization_by_density,
    closed_not,
    demorganization,
    demorganization_by_density,
    extend_topology,
    is_boolean,
    is_de_morgan,
    kept_objects,
    reduced_subcategory,
    restrict_topology,
)
from .sieve import (
    Sieve,
    empty_sieve,
    enumerate_sieves,
    pullback_sieve,
    sieve_implies,
    sieve_intersection,
    sieve_not,
    sieve_not_not,
    sieve_union,
)
from .topology import (
    DEFAULT_BOUND,
    GrothendieckTopology,
    check_axioms,
    close_sieve,
    de_morgan_topology,
    dense_topology,
    enumerate_topologies,
    family_of,
    generate_topology,
    is_subcanonical,
    maximal_topology,
    topology_join,
    topology_leq,
    trivial_topology,
    universally_effective_epimorphic,
)


# -- brute-force oracles ---------------------------------------------------

def brute_sieves(C: FiniteCategory, c: str) -> set[frozenset[str]]:
    """Filter every subset of arrows into ``c`` by the sieve condition."""
    into = C.arrows_into(c)
    out = set()
    for r in range(len(into) + 1):
        for subset in combinations(into, r):
            s = set(subset)
            if all(C.compose(f, g) in s for f in s for g in C.arrows_into(C.dom(f))):
                out.add(frozenset(s))
    return out


def brute_largest(candidates, pred):
    """The largest candidate satisfying ``pred``; None if there is no maximum."""
    good = [x for x in candidates if pred(x)]
    top = [x for x in good if all(y <= x for y in good)]
    return top[0] if top else None


def brute_not(S: Sieve) -> Sieve | None:
    return brute_largest(enumerate_sieves(S.category, S.cod), lambda U: not (U.arrows & S.arrows))


def brute_implies(S: Sieve, T: Sieve) -> Sieve | None:
    return brute_largest(enumerate_sieves(S.category, S.cod),
                         lambda U: (U.arrows & S.arrows) <= T.arrows)


def meet_all(C: FiniteCategory, topologies) -> GrothendieckTopology:
    topologies = list(topologies)
    covers = {c: frozenset.intersection(*(J.covers[c] for J in topologies)) for c in C.objects}
    return GrothendieckTopology(C, covers)


def smallest_topology(C, topologies, pred) -> GrothendieckTopology:
    """Intersection of the enumerated topologies satisfying ``pred``."""
    return meet_all(C, [J for J in topologies if pred(J)])


# -- suite -----------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


class OracleRun:
    """Lazily shared enumerations for one category."""

    def __init__(self, C: FiniteCategory, bound: int = DEFAULT_BOUND):
        self.C = C
        self.bound = bound

    @cached_property
    def topologies(self) -> list[GrothendieckTopology]:
        return enumerate_topologies(self.C, self.bound)

    @cached_property
    def sieves(self) -> list[Sieve]:
        return [S for c in self.C.objects for S in enumerate_sieves(self.C, c)]

    @cached_property
    def dense(self) -> GrothendieckTopology:
        return dense_topology(self.C)

    @cached_property
    def presheaves(self) -> list[Presheaf]:
        return fixture_presheaves(self.C)

    @cached_property
    def subs(self) -> dict[Presheaf, list[Subpresheaf]]:
        return {E: enumerate_subpresheaves(E) for E in self.presheaves}

    def run(self) -> list[CheckResult]:
        results = []
        for name, check in CHECKS:
            try:
                problem = next(iter(check(self)), None)
            except Exception as exc:  # report, don't abort the suite
                problem = f"raised {type(exc).__name__}: {exc}"
            results.append(CheckResult(name, problem is None, problem or ""))
        return results


CHECKS: list[tuple[str, Callable[[OracleRun], Iterator[str]]]] = []


def check(name):
    def register(fn):
        CHECKS.append((name, fn))
        return fn
    return register


@check("category.opposite_involution")
def _(run):
    if opposite(opposite(run.C)) != run.C:
        yield "opposite(opposite(C)) differs from C"


@check("category.groupoid_implies_ore")
def _(run):
    if is_groupoid(run.C) and not satisfies_right_ore(run.C):
        yield "groupoid without cospan completion"


@check("sieve.enumeration_matches_subsets")
def _(run):
    for c in run.C.objects:
        fast = {S.arrows for S in enumerate_sieves(run.C, c)}
        if fast != brute_sieves(run.C, c):
            yield f"sieves on {c} differ from the subset filter"


@check("sieve.heyting_laws")
def _(run):
    C = run.C
    for c in C.objects:
        sieves = enumerate_sieves(C, c)
        bottom = empty_sieve(C, c)
        for S in sieves:
            N = sieve_not(S)
            if sieve_intersection(S, N) != bottom:
                yield f"S ∩ ¬S ≠ ∅ for {S!r}"
            if N != brute_not(S):
                yield f"¬{S!r} is not the largest disjoint sieve"
            if not S <= sieve_not_not(S):
                yield f"{S!r} ⊄ ¬¬S"
            if sieve_not_not(S) != sieve_not(N):
                yield f"stable-non-emptiness formula disagrees with ¬(¬S) for {S!r}"
            if sieve_not(sieve_not(N)) != N:
                yield f"¬¬¬S ≠ ¬S for {S!r}"
            if sieve_implies(S, bottom) != N:
                yield f"S ⇒ ∅ ≠ ¬S for {S!r}"
            for T in sieves:
                I = sieve_implies(S, T)
                if I != brute_implies(S, T):
                    yield f"{S!r} ⇒ {T!r} is not the largest U with U ∩ S ⊆ T"
                for U in sieves:
                    if (sieve_intersection(U, S) <= T) != (U <= I):
                        yield f"adjunction fails for U={U!r}, S={S!r}, T={T!r}"


@check("sieve.pullback_preserves_lattice")
def _(run):
    C = run.C
    for c in C.objects:
        sieves = enumerate_sieves(C, c)
        for f in C.arrows_into(c):
            for S, T in product(sieves, sieves):
                if pullback_sieve(sieve_intersection(S, T), f) != sieve_intersection(
                        pullback_sieve(S, f), pullback_sieve(T, f)):
                    yield f"pullback along {f} does not preserve ∩"
                if pullback_sieve(sieve_union(S, T), f) != sieve_union(
                        pullback_sieve(S, f), pullback_sieve(T, f)):
                    yield f"pullback along {f} does not preserve ∪"


@check("sieve.ore_negation_remark")
def _(run):
    if satisfies_right_ore(run.C):
        for S in run.sieves:
            if S.arrows and sieve_not(S).arrows:
                yield f"¬{S!r} is nonempty in a category with cospan completion"


@check("topology.constructors_pass_axioms")
def _(run):
    C = run.C
    for label, J in (("trivial", trivial_topology(C)), ("maximal", maximal_topology(C)),
                     ("dense", run.dense), ("de_morgan", de_morgan_topology(C))):
        bad = check_axioms(C, J.covers)
        if bad is not None:
            yield f"{label}: {bad}"
        if J not in run.topologies:
            yield f"{label} topology missing from the enumeration"


@check("topology.trivial_is_least")
def _(run):
    T = trivial_topology(run.C)
    for J in run.topologies:
        if not topology_leq(T, J):
            yield f"trivial ≰ {J!r}"


@check("topology.generation_minimal")
def _(run):
    C = run.C
    for S in run.sieves:
        G = generate_topology(C, [(S.cod, S)])
        oracle = smallest_topology(C, run.topologies, lambda J: J.is_covering(S))
        if G != oracle:
            yield f"generated by {S!r}: {G!r} ≠ {oracle!r}"
    for J in run.topologies:
        if generate_topology(C, family_of(J)) != J:
            yield f"generation is not idempotent on {J!r}"


@check("topology.dense_generated_by_excluded_middle")
def _(run):
    C = run.C
    G = generate_topology(C, [(S.cod, sieve_union(S, sieve_not(S))) for S in run.sieves])
    if G != run.dense:
        yield f"{G!r} ≠ dense {run.dense!r}"


@check("topology.de_morgan_below_dense")
def _(run):
    if not topology_leq(de_morgan_topology(run.C), run.dense):
        yield "De Morgan topology is not below the dense topology"


@check("topology.below_dense_iff_stably_nonempty")
def _(run):
    C = run.C
    for J in run.topologies:
        stable = all(all(pullback_sieve(S, f).arrows for f in C.arrows_into(S.cod))
                     for c in C.objects for S in J.covers[c])
        if stable != topology_leq(J, run.dense):
            yield f"{J!r}: comparison with dense disagrees with stable non-emptiness"


@check("topology.join_is_least_upper_bound")
def _(run):
    C = run.C
    for J1, J2 in product(run.topologies, repeat=2):
        oracle = smallest_topology(C, run.topologies, lambda K: topology_leq(J1, K) and topology_leq(J2, K))
        if topology_join(J1, J2) != oracle:
            yield f"join of {J1!r} and {J2!r}"


@check("topology.closure_operator_laws")
def _(run):
    C = run.C
    for J in run.topologies:
        for c in C.objects:
            sieves = enumerate_sieves(C, c)
            for S in sieves:
                cl = close_sieve(J, S)
                if not S <= cl or close_sieve(J, cl) != cl:
                    yield f"closure of {S!r} under {J!r} not extensive/idempotent"
                if cl.is_maximal != J.is_covering(S):
                    yield f"{S!r}: closure maximal ≠ covering under {J!r}"
                for T in sieves:
                    if S <= T and not cl <= close_sieve(J, T):
                        yield f"closure not monotone on {S!r} ⊆ {T!r}"
                    if close_sieve(J, sieve_intersection(S, T)) != sieve_intersection(cl, close_sieve(J, T)):
                        yield f"closure does not preserve {S!r} ∩ {T!r}"


@check("topology.subcanonical_matches_universal")
def _(run):
    for J in run.topologies:
        universal = all(universally_effective_epimorphic(S) for c in run.C.objects for S in J.covers[c])
        if universal != is_subcanonical(J):
            yield f"{J!r}: subcanonical verdict differs from the universal criterion"


@check("presheaf.heyting_laws")
def _(run):
    for E, subs in run.subs.items():
        bottom, top = empty_sub(E), full_sub(E)
        for A in subs:
            N = sub_not(A)
            if sub_meet(A, N) != bottom:
                yield f"{E!r}: A ∧ ¬A ≠ 0 for {A!r}"
            disjoint = [B for B in subs if sub_meet(A, B) == bottom]
            if not all(B <= N for B in disjoint) or N not in subs:
                yield f"{E!r}: ¬{A!r} is not the largest disjoint subobject"
            if not A <= sub_not(N) or sub_not(sub_not(N)) != N:
                yield f"{E!r}: double negation laws fail for {A!r}"
            if sub_implies(A, bottom) != N or sub_implies(A, A) != top:
                yield f"{E!r}: implication/negation mismatch for {A!r}"
            for B in subs:
                I = sub_implies(A, B)
                for U in subs:
                    if (sub_meet(U, A) <= B) != (U <= I):
                        yield f"{E!r}: adjunction fails at U={U!r}, A={A!r}, B={B!r}"


@check("presheaf.yoneda_bijection")
def _(run):
    C = run.C
    for c in C.objects:
        y = yoneda(C, c)
        subs = enumerate_subpresheaves(y)
        sieves = enumerate_sieves(C, c)
        if {A for A in subs} != {sieve_to_subpresheaf(S) for S in sieves}:
            yield f"subpresheaves of y({c}) do not match sieves on {c}"
        for S in sieves:
            A = sieve_to_subpresheaf(S)
            if sub_not(A) != sieve_to_subpresheaf(sieve_not(S)):
                yield f"¬ not intertwined at {S!r}"
            for T in sieves:
                if sub_implies(A, sieve_to_subpresheaf(T)) != sieve_to_subpresheaf(sieve_implies(S, T)):
                    yield f"⇒ not intertwined at {S!r}, {T!r}"
            for J in run.topologies:
                if close_subobject(J, A) != sieve_to_subpresheaf(close_sieve(J, S)):
                    yield f"closure not intertwined at {S!r} under {J!r}"


@check("presheaf.closure_operator_laws")
def _(run):
    for J in run.topologies:
        for E, subs in run.subs.items():
            for A in subs:
                cl = close_subobject(J, A)
                if not A <= cl or close_subobject(J, cl) != cl:
                    yield f"{E!r}: closure of {A!r} not extensive/idempotent"
                if is_dense_mono(J, A) != (cl == full_sub(E)):
                    yield f"{E!r}: density verdict inconsistent for {A!r}"
                for B in subs:
                    if A <= B and not cl <= close_subobject(J, B):
                        yield f"{E!r}: closure not monotone"
                    if close_subobject(J, sub_meet(A, B)) != sub_meet(cl, close_subobject(J, B)):
                        yield f"{E!r}: closure does not preserve meets"


@check("presheaf.negation_closed_below_dense")
def _(run):
    for J in run.topologies:
        if not topology_leq(J, run.dense):
            continue
        for E, subs in run.subs.items():
            for A in subs:
                N = sub_not(A)
                if close_subobject(J, N) != N:
                    yield f"{E!r}: ¬{A!r} not closed under {J!r}"


@check("presheaf.closed_pseudocomplement")
def _(run):
    for J in run.topologies:
        for E, subs in run.subs.items():
            closed = [B for B in subs if is_closed_subobject(J, B)]
            zero = close_subobject(J, empty_sub(E))
            for A in closed:
                got = closed_sub_not(J, A)
                oracle = brute_largest(closed, lambda B: sub_meet(A, B) == zero)
                if got != oracle:
                    yield f"{E!r}: closed ¬{A!r} under {J!r} is {got!r}, oracle {oracle!r}"
                if topology_leq(J, run.dense) and got != sub_not(A):
                    yield f"{E!r}: closed ¬ differs from ¬ although J ≤ dense"


@check("presheaf.densifying_minimal")
def _(run):
    C = run.C
    for J in run.topologies:
        for E, subs in run.subs.items():
            for A in subs:
                got = densifying_topology(J, A)
                if not is_dense_mono(got, A):
                    yield f"{E!r}: {A!r} not dense for its densifying topology"
                oracle = smallest_topology(C, run.topologies,
                                           lambda K: topology_leq(J, K) and is_dense_mono(K, A))
                if got != oracle:
                    yield f"{E!r}: densifying {A!r} over {J!r} is not minimal"


@check("presheaf.representables_suffice")
def _(run):
    C = run.C
    for J in run.topologies:
        def generated(presheaves):
            extra = []
            for E in presheaves:
                for A in enumerate_subpresheaves(E):
                    X = sub_join(A, sub_not(A))
                    extra += [(c, element_sieve(X, c, e)) for c in C.objects for e in E.values[c]]
            return generate_topology(C, family_of(J) + extra)
        reps = [E for E in run.presheaves if E.representing is not None]
        if generated(reps) != generated(run.presheaves):
            yield f"representables do not suffice over {J!r}"


@check("reduct.boolean_iff_groupoid")
def _(run):
    if is_boolean(run.C, trivial_topology(run.C)) != is_groupoid(run.C):
        yield "Boolean verdict differs from the groupoid test"


@check("reduct.de_morgan_iff_right_ore")
def _(run):
    if is_de_morgan(run.C, trivial_topology(run.C)) != satisfies_right_ore(run.C):
        yield "De Morgan verdict differs from cospan completion"


@check("reduct.booleanization_routes_agree")
def _(run):
    C = run.C
    for J in run.topologies:
        Jb, Jm = booleanization(C, J), demorganization(C, J)
        if Jb != booleanization_by_density(C, J):
            yield f"J_b routes disagree for {J!r}"
        if Jm != demorganization_by_density(C, J):
            yield f"J_m routes disagree for {J!r}"
        kept = kept_objects(J)
        closed = [S for c in kept for S in enumerate_sieves(C, c) if close_sieve(J, S) == S]

        def forces_excluded_middle(K):
            return topology_leq(J, K) and all(K.is_covering(sieve_union(S, closed_not(J, S))) for S in closed)

        def forces_de_morgan(K):
            return topology_leq(J, K) and all(
                K.is_covering(sieve_union(closed_not(J, S), closed_not(J, closed_not(J, S)))) for S in closed)

        if Jb != smallest_topology(C, run.topologies, forces_excluded_middle):
            yield f"J_b is not the smallest Boolean-forcing topology over {J!r}"
        if Jm != smallest_topology(C, run.topologies, forces_de_morgan):
            yield f"J_m is not the smallest De Morgan-forcing topology over {J!r}"
        if not (topology_leq(J, Jm) and topology_leq(Jm, Jb)):
            yield f"J ≤ J_m ≤ J_b fails for {J!r}"
        if booleanization(C, Jb) != Jb or demorganization(C, Jm) != Jm:
            yield f"not idempotent at {J!r}"
        if not is_boolean(C, Jb) or not is_de_morgan(C, Jm):
            yield f"verdicts on J_b / J_m fail for {J!r}"
        if is_boolean(C, J) and not is_de_morgan(C, J):
            yield f"Boolean but not De Morgan: {J!r}"


@check("reduct.restrict_extend_bijection")
def _(run):
    C = run.C
    for J in run.topologies:
        site = reduced_subcategory(C, J)
        D = site.category
        if extend_topology(dense_topology(D), C, J) != booleanization(C, J):
            yield f"J_b is not the extension of the reduced dense topology for {J!r}"
        for J2 in run.topologies:
            if topology_leq(J, J2) and extend_topology(restrict_topology(J2, D), C, J) != J2:
                yield f"extend(restrict({J2!r})) ≠ J' over {J!r}"
        for Z in enumerate_topologies(D, run.bound):
            if topology_leq(site.topology, Z) and restrict_topology(extend_topology(Z, C, J), D) != Z:
                yield f"restrict(extend({Z!r})) ≠ Z over {J!r}"


def run_oracle(C: FiniteCategory, bound: int = DEFAULT_BOUND) -> list[CheckResult]:
    """Run every invariant against ``C``; raises TooLarge past ``bound`` sieves."""
    run = OracleRun(C, bound)
    run.topologies  # fail fast on TooLarge
    return run.run()


__all__ = ["CHECKS", "CheckResult", "OracleRun", "brute_implies", "brute_largest", "brute_not",
           "brute_sieves", "meet_all", "run_oracle", "smallest_topology"]

