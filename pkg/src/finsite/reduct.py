"""Reduced sites, Booleanization and DeMorganization of Sh(C, J)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CategoryMismatch, NotDense, ObjectNotInSubcategory
from .fincat import FiniteCategory, full_subcategory, is_full_subcategory
from .sieve import (
    Sieve,
    empty_sieve,
    enumerate_sieves,
    generate_sieve,
    pullback_sieve,
    sieve_implies,
    sieve_not,
    sieve_not_not,
    sieve_union,
)
from .topology import (
    GrothendieckTopology,
    close_sieve,
    de_morgan_topology,
    dense_topology,
    family_of,
    generate_topology,
    is_closed,
    topology_join,
    topology_leq,
)


@dataclass(frozen=True)
class ReducedSite:
    ambient: FiniteCategory
    kept: tuple[str, ...]
    category: FiniteCategory
    topology: GrothendieckTopology

    @property
    def degenerate(self) -> bool:
        return not self.kept

    def to_dict(self) -> dict:
        return {
            "category": self.ambient.name,
            "kept_objects": list(self.kept),
            "reduced_category": self.category.to_dict(),
            "restricted_topology": self.topology.to_dict(),
        }


def _check(C: FiniteCategory, J: GrothendieckTopology):
    if J.category != C:
        raise CategoryMismatch("topology does not live over the given category")


def kept_objects(J: GrothendieckTopology) -> tuple[str, ...]:
    """Objects not covered by the empty sieve."""
    C = J.category
    return tuple(c for c in C.objects if empty_sieve(C, c) not in J.covers[c])


def restrict_topology(J: GrothendieckTopology, D: FiniteCategory) -> GrothendieckTopology:
    """A sieve of ``D`` covers iff the sieve it generates in the ambient category does."""
    C = J.category
    missing = sorted(set(D.objects) - set(C.objects))
    if missing:
        raise ObjectNotInSubcategory(f"objects {missing} are not in the ambient category", witness=missing)
    if not is_full_subcategory(D, C):
        raise ObjectNotInSubcategory("not a full subcategory of the ambient category")
    covers = {}
    for c in D.objects:
        covers[c] = {R for R in enumerate_sieves(D, c)
                     if J.is_covering(generate_sieve(C, c, R.arrows))}
    return GrothendieckTopology(D, covers)


def is_dense_subcategory(J: GrothendieckTopology, D: FiniteCategory) -> bool:
    """Every object is covered by the arrows into it from objects of ``D``."""
    C = J.category
    keep = set(D.objects)
    return all(J.is_covering(generate_sieve(C, c, [f for f in C.arrows_into(c) if C.dom(f) in keep]))
               for c in C.objects)


def _trace(S: Sieve, D: FiniteCategory) -> Sieve:
    """``S ∩ arr(D)`` as a sieve of ``D``."""
    return Sieve(D, S.cod, (f for f in S.arrows if f in D.arrows), _check=False)


def extend_topology(Z: GrothendieckTopology, C: FiniteCategory, J: GrothendieckTopology) -> GrothendieckTopology:
    """The topology on ``C`` whose restriction to ``D = Z.category`` is ``Z``.

    ``S`` covers ``c`` iff ``f*(S) ∩ arr(D)`` is Z-covering on ``d`` for every
    ``f: d → c`` with ``d`` in ``D``.
    """
    _check(C, J)
    D = Z.category
    if not set(D.objects) <= set(C.objects) or not is_full_subcategory(D, C):
        raise ObjectNotInSubcategory("topology is not over a full subcategory of C")
    if not is_dense_subcategory(J, D):
        raise NotDense("subcategory is not dense for the given topology", witness=D.objects)
    keep = set(D.objects)
    covers = {}
    for c in C.objects:
        covers[c] = {S for S in enumerate_sieves(C, c)
                     if all(Z.is_covering(_trace(pullback_sieve(S, f), D))
                            for f in C.arrows_into(c) if C.dom(f) in keep)}
    return GrothendieckTopology(C, covers)


def reduced_subcategory(C: FiniteCategory, J: GrothendieckTopology) -> ReducedSite:
    _check(C, J)
    kept = kept_objects(J)
    D = full_subcategory(C, kept)
    return ReducedSite(C, kept, D, restrict_topology(J, D))


def _from_reduced(C: FiniteCategory, site: ReducedSite, Z: GrothendieckTopology) -> GrothendieckTopology:
    # off the reduced site every sieve covers; on it, S covers iff it contains
    # the C-generated sieve of some Z-covering sieve
    covers = {}
    for c in C.objects:
        all_sieves = enumerate_sieves(C, c)
        if c not in site.kept:
            covers[c] = set(all_sieves)
            continue
        bases = [generate_sieve(C, c, T.arrows) for T in Z.covers[c]]
        covers[c] = {S for S in all_sieves if any(B <= S for B in bases)}
    return GrothendieckTopology(C, covers)


def booleanization(C: FiniteCategory, J: GrothendieckTopology) -> GrothendieckTopology:
    """The topology of the largest dense Boolean subtopos of Sh(C, J)."""
    site = reduced_subcategory(C, J)
    return _from_reduced(C, site, dense_topology(site.category))


def demorganization(C: FiniteCategory, J: GrothendieckTopology) -> GrothendieckTopology:
    """The topology of the largest dense De Morgan subtopos of Sh(C, J)."""
    site = reduced_subcategory(C, J)
    return _from_reduced(C, site, topology_join(de_morgan_topology(site.category), site.topology))


def closed_not(J: GrothendieckTopology, S: Sieve) -> Sieve:
    """Pseudocomplement of a J-closed sieve among J-closed sieves."""
    return sieve_implies(S, close_sieve(J, empty_sieve(J.category, S.cod)))


def booleanization_by_density(C: FiniteCategory, J: GrothendieckTopology) -> GrothendieckTopology:
    """Generate over ``J`` by ``S ∪ ¬S`` for every J-closed sieve ``S``, negation taken among closed sieves."""
    _check(C, J)
    extra = [(c, sieve_union(S, closed_not(J, S)))
             for c in kept_objects(J) for S in enumerate_sieves(C, c) if is_closed(J, S)]
    return generate_topology(C, family_of(J) + extra)


def demorganization_by_density(C: FiniteCategory, J: GrothendieckTopology) -> GrothendieckTopology:
    """Generate over ``J`` by ``¬S ∪ ¬¬S`` for every J-closed sieve ``S``."""
    _check(C, J)
    extra = []
    for c in kept_objects(J):
        for S in enumerate_sieves(C, c):
            if is_closed(J, S):
                N = closed_not(J, S)
                extra.append((c, sieve_union(N, closed_not(J, N))))
    return generate_topology(C, family_of(J) + extra)


def boolean_witness(C: FiniteCategory, J: GrothendieckTopology) -> Sieve | None:
    """A sieve ``R`` of the reduced site with ``R ∪ ¬R`` not covering, if any."""
    site = reduced_subcategory(C, J)
    for c in site.kept:
        for R in enumerate_sieves(site.category, c):
            if not site.topology.is_covering(sieve_union(R, sieve_not(R))):
                return R
    return None


def de_morgan_witness(C: FiniteCategory, J: GrothendieckTopology) -> Sieve | None:
    """A sieve ``R`` of the reduced site with ``¬R ∪ ¬¬R`` not covering, if any."""
    site = reduced_subcategory(C, J)
    for c in site.kept:
        for R in enumerate_sieves(site.category, c):
            if not site.topology.is_covering(sieve_union(sieve_not(R), sieve_not_not(R))):
                return R
    return None


def is_boolean(C: FiniteCategory, J: GrothendieckTopology) -> bool:
    site = reduced_subcategory(C, J)
    # the degenerate topos is Boolean
    if site.degenerate:
        return True
    return site.topology == dense_topology(site.category)


def is_de_morgan(C: FiniteCategory, J: GrothendieckTopology) -> bool:
    site = reduced_subcategory(C, J)
    if site.degenerate:
        return True
    return topology_leq(de_morgan_topology(site.category), site.topology)
