"""Grothendieck topologies on finite categories, stored extensionally."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import product

from .errors import CategoryMismatch, TooLarge, TopologyAxiomError
from .fincat import FiniteCategory
from .sieve import (
    Sieve,
    enumerate_sieves,
    is_stably_nonempty,
    maximal_sieve,
    pullback_sieve,
    sieve_count,
    sieve_not,
    sieve_not_not,
    sieve_union,
)

DEFAULT_BOUND = 16


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    obj: str
    sieve: Sieve
    detail: str

    def __str__(self):
        return f"{self.axiom} fails at {self.obj}: {self.sieve!r} ({self.detail})"


def check_axioms(C: FiniteCategory, covers: Mapping[str, Iterable[Sieve]]) -> AxiomViolation | None:
    """Return the first axiom violation of a cover assignment, or None."""
    cov = {c: frozenset(covers.get(c, ())) for c in C.objects}
    for c in C.objects:
        for S in cov[c]:
            if S.category != C or S.cod != c:
                raise CategoryMismatch(f"{S!r} listed under {c} is not a sieve on {c}")
    for c in C.objects:
        top = maximal_sieve(C, c)
        if top not in cov[c]:
            return AxiomViolation("maximality", c, top, "maximal sieve not covering")
    for c in C.objects:
        for S in sorted(cov[c], key=Sieve.sort_key):
            for T in enumerate_sieves(C, c):
                if S <= T and T not in cov[c]:
                    return AxiomViolation("upward closure", c, T, f"contains covering {S!r}")
    for c in C.objects:
        for S in sorted(cov[c], key=Sieve.sort_key):
            for f in C.arrows_into(c):
                P = pullback_sieve(S, f)
                if P not in cov[C.dom(f)]:
                    return AxiomViolation("stability", c, S, f"pullback along {f} is {P!r}")
    for c in C.objects:
        for R in enumerate_sieves(C, c):
            if R in cov[c]:
                continue
            for S in sorted(cov[c], key=Sieve.sort_key):
                if all(pullback_sieve(R, f) in cov[C.dom(f)] for f in S.arrows):
                    return AxiomViolation("transitivity", c, R, f"locally covering over {S!r}")
    return None


class GrothendieckTopology:
    """Covering sieves per object; the axioms are verified on construction."""

    __slots__ = ("category", "covers", "_hash")

    def __init__(self, category: FiniteCategory, covers: Mapping[str, Iterable[Sieve]], _check=True):
        self.category = category
        self.covers = {c: frozenset(covers.get(c, ())) for c in category.objects}
        if _check:
            bad = check_axioms(category, self.covers)
            if bad is not None:
                raise TopologyAxiomError(str(bad), witness=bad)
        self._hash = hash(tuple((c, self.covers[c]) for c in category.objects))

    def __eq__(self, other):
        if not isinstance(other, GrothendieckTopology):
            return NotImplemented
        return self.category == other.category and self.covers == other.covers

    def __hash__(self):
        return self._hash

    def __le__(self, other):
        return topology_leq(self, other)

    def __or__(self, other):
        return topology_join(self, other)

    def __repr__(self):
        parts = []
        for c in self.category.objects:
            sieves = ", ".join("{" + ",".join(sorted(S.arrows)) + "}" for S in self.sorted_covers(c))
            parts.append(f"{c}: [{sieves}]")
        return f"GrothendieckTopology({'; '.join(parts)})"

    def is_covering(self, S: Sieve) -> bool:
        return S in self.covers[S.cod]

    def sorted_covers(self, c: str) -> list[Sieve]:
        return sorted(self.covers[c], key=Sieve.sort_key)

    def sort_key(self):
        # coarse first: the trivial topology leads, the maximal one trails
        return (sum(len(v) for v in self.covers.values()),
                tuple((c, tuple(S.sort_key() for S in self.sorted_covers(c))) for c in self.category.objects))

    def to_dict(self) -> dict:
        return {
            "category": self.category.name,
            "covers": {c: [sorted(S.arrows) for S in self.sorted_covers(c)]
                       for c in self.category.objects},
        }

    @classmethod
    def from_dict(cls, C: FiniteCategory, data, saturate=False) -> GrothendieckTopology:
        """Read the file format; strict mode demands an already saturated assignment."""
        raw = data["covers"]
        family = []
        for c, lists in raw.items():
            if c not in C.objects:
                raise KeyError(f"unknown object {c!r}")
            family.extend((c, Sieve(C, c, arrows)) for arrows in lists)
        if saturate:
            return generate_topology(C, family)
        covers: dict[str, set[Sieve]] = {c: set() for c in C.objects}
        for c, S in family:
            covers[c].add(S)
        return cls(C, covers)


def _same_category(J1, J2):
    if J1.category != J2.category:
        raise CategoryMismatch("topologies live over different categories")


def trivial_topology(C: FiniteCategory) -> GrothendieckTopology:
    return GrothendieckTopology(C, {c: {maximal_sieve(C, c)} for c in C.objects}, _check=False)


def maximal_topology(C: FiniteCategory) -> GrothendieckTopology:
    """Every sieve covers (the degenerate topology)."""
    return GrothendieckTopology(C, {c: set(enumerate_sieves(C, c)) for c in C.objects}, _check=False)


def saturate(C: FiniteCategory, covers: Mapping[str, Iterable[Sieve]]) -> dict[str, frozenset[Sieve]]:
    """Close a cover assignment under stability, transitivity and upward closure."""
    cov = {c: set(covers.get(c, ())) | {maximal_sieve(C, c)} for c in C.objects}
    changed = True
    while changed:
        changed = False
        for c in C.objects:
            for S in list(cov[c]):
                for f in C.arrows_into(c):
                    P = pullback_sieve(S, f)
                    if P not in cov[P.cod]:
                        cov[P.cod].add(P)
                        changed = True
        for c in C.objects:
            for R in enumerate_sieves(C, c):
                if R in cov[c]:
                    continue
                if any(all(pullback_sieve(R, f) in cov[C.dom(f)] for f in S.arrows) for S in cov[c]):
                    cov[c].add(R)
                    changed = True
        for c in C.objects:
            for T in enumerate_sieves(C, c):
                if T not in cov[c] and any(S <= T for S in cov[c]):
                    cov[c].add(T)
                    changed = True
    return {c: frozenset(s) for c, s in cov.items()}


def generate_topology(C: FiniteCategory, family: Iterable[tuple[str, Sieve]]) -> GrothendieckTopology:
    """Least topology in which every ``(c, S)`` of ``family`` covers."""
    covers: dict[str, set[Sieve]] = {c: set() for c in C.objects}
    for c, S in family:
        if S.category != C:
            raise CategoryMismatch(f"{S!r} is not a sieve of this category")
        if S.cod != c:
            raise CategoryMismatch(f"{S!r} listed under {c}")
        covers[c].add(S)
    return GrothendieckTopology(C, saturate(C, covers))


def family_of(J: GrothendieckTopology) -> list[tuple[str, Sieve]]:
    return [(c, S) for c in J.category.objects for S in J.sorted_covers(c)]


def dense_topology(C: FiniteCategory) -> GrothendieckTopology:
    """Covering sieves are exactly the stably non-empty ones."""
    return GrothendieckTopology(
        C, {c: {S for S in enumerate_sieves(C, c) if is_stably_nonempty(S)} for c in C.objects})


def de_morgan_topology(C: FiniteCategory) -> GrothendieckTopology:
    """Generated by the sieves ``¬R ∪ ¬¬R`` for every sieve ``R``."""
    return generate_topology(
        C, [(c, sieve_union(sieve_not(R), sieve_not_not(R)))
            for c in C.objects for R in enumerate_sieves(C, c)])


def topology_leq(J1: GrothendieckTopology, J2: GrothendieckTopology) -> bool:
    _same_category(J1, J2)
    return all(J1.covers[c] <= J2.covers[c] for c in J1.category.objects)


def topology_join(J1: GrothendieckTopology, J2: GrothendieckTopology) -> GrothendieckTopology:
    _same_category(J1, J2)
    return generate_topology(J1.category, family_of(J1) + family_of(J2))


def topology_meet(J1: GrothendieckTopology, J2: GrothendieckTopology) -> GrothendieckTopology:
    _same_category(J1, J2)
    C = J1.category
    return GrothendieckTopology(C, {c: J1.covers[c] & J2.covers[c] for c in C.objects})


def close_sieve(J: GrothendieckTopology, S: Sieve) -> Sieve:
    """``{f | f*(S) covers dom(f)}``."""
    if S.category != J.category:
        raise CategoryMismatch("sieve and topology live over different categories")
    C = S.category
    return Sieve(C, S.cod, (f for f in C.arrows_into(S.cod)
                            if pullback_sieve(S, f) in J.covers[C.dom(f)]), _check=False)


def is_closed(J: GrothendieckTopology, S: Sieve) -> bool:
    return close_sieve(J, S) == S


def compatible_families(S: Sieve, e: str) -> list[dict[str, str]]:
    """All families ``(x_f: dom f → e)_{f∈S}`` with ``x_{f∘g} = x_f∘g``."""
    C = S.category
    members = sorted(S.arrows)
    # constraints between members: x_{f∘g} == x_f∘g
    links = [(f, g, C.compose(f, g)) for f in members for g in C.arrows_into(C.dom(f))]
    out: list[dict[str, str]] = []

    def extend(i, chosen):
        if i == len(members):
            out.append(dict(chosen))
            return
        f = members[i]
        for x in C.hom(C.dom(f), e):
            chosen[f] = x
            ok = True
            for a, g, fg in links:
                if a in chosen and fg in chosen and chosen[fg] != C.compose(chosen[a], g):
                    ok = False
                    break
            if ok:
                extend(i + 1, chosen)
            del chosen[f]

    extend(0, {})
    return out


def effective_epimorphic(S: Sieve) -> bool:
    """Arrows out of ``cod(S)`` correspond bijectively to compatible families on ``S``."""
    C = S.category
    for e in C.objects:
        families = compatible_families(S, e)
        images = [tuple(C.compose(h, f) for f in sorted(S.arrows)) for h in C.hom(S.cod, e)]
        if len(set(images)) != len(images):
            return False
        targets = {tuple(fam[f] for f in sorted(S.arrows)) for fam in families}
        if set(images) != targets:
            return False
    return True


def universally_effective_epimorphic(S: Sieve) -> bool:
    return all(effective_epimorphic(pullback_sieve(S, f)) for f in S.category.arrows_into(S.cod))


def subcanonical_witness(J: GrothendieckTopology) -> Sieve | None:
    for c in J.category.objects:
        for S in J.sorted_covers(c):
            if not effective_epimorphic(S):
                return S
    return None


def is_subcanonical(J: GrothendieckTopology) -> bool:
    """Every covering sieve is effective-epimorphic."""
    return subcanonical_witness(J) is None


def _up_sets(C: FiniteCategory, c: str) -> list[frozenset[Sieve]]:
    """Upward-closed families of sieves on ``c`` that contain the maximal sieve."""
    sieves = enumerate_sieves(C, c)
    ups = []
    for gens in _antichains(sieves):
        ups.append(frozenset(T for T in sieves if any(S <= T for S in gens)))
    return [u for u in ups if maximal_sieve(C, c) in u]


def _antichains(sieves):
    out = [()]
    for S in sieves:
        out += [a + (S,) for a in out if all(not (S <= T or T <= S) for T in a)]
    return [a for a in out if a]


def enumerate_topologies(C: FiniteCategory, bound: int = DEFAULT_BOUND) -> list[GrothendieckTopology]:
    """Every topology on ``C``, canonically ordered.

    Raises TooLarge when ``C`` has more than ``bound`` sieves in total.
    """
    total = sieve_count(C)
    if total > bound:
        raise TooLarge(f"{total} sieves exceed the enumeration bound {bound}", witness=total)
    choices = [_up_sets(C, c) for c in C.objects]
    found = []
    for pick in product(*choices):
        covers = dict(zip(C.objects, pick))
        if check_axioms(C, covers) is None:
            found.append(GrothendieckTopology(C, covers, _check=False))
    return sorted(found, key=GrothendieckTopology.sort_key)
