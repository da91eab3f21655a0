"""Finite presheaves, their subobject Heyting algebras and J-closure."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from importlib import resources
from pathlib import Path

from .errors import (
    CategoryMismatch,
    ElementNotFound,
    NotClosed,
    ParentMismatch,
    ParseError,
    PresheafError,
    TooLarge,
)
from .fincat import FiniteCategory
from .sieve import Sieve
from .topology import GrothendieckTopology, family_of, generate_topology

DEFAULT_ELEMENT_BOUND = 32

PRESHEAF_FIXTURES = {
    "WALK": ("walk_pair",),
    "Z2": ("z2_swap",),
    "M2": ("m2_idem",),
    "PAIR": ("pair_graph",),
    "SPAN": ("span_glue",),
}


class Presheaf:
    """A contravariant functor into finite sets.

    ``restriction[f]`` maps ``values[cod f]`` to ``values[dom f]``.
    """

    __slots__ = ("category", "values", "restriction", "name", "representing", "_key")

    def __init__(self, category: FiniteCategory, values: Mapping[str, Iterable[str]],
                 restriction: Mapping[str, Mapping[str, str]], name="", representing=None,
                 _check=True):
        C = category
        self.category = C
        self.name = name
        self.representing = representing
        self.values = {c: tuple(sorted(values.get(c, ()))) for c in C.objects}
        maps = {}
        for f in C.arrows:
            given = restriction.get(f)
            if given is None and C.is_identity(f):
                given = {x: x for x in self.values[C.cod(f)]}
            if given is None:
                raise PresheafError(f"no restriction map for {f}", witness=(f,))
            maps[f] = dict(given)
        self.restriction = maps
        if _check:
            self._validate()
        self._key = (tuple(sorted(self.values.items())),
                     tuple(sorted((f, tuple(sorted(m.items()))) for f, m in maps.items())))

    def _validate(self):
        C = self.category
        for f, m in self.restriction.items():
            src, tgt = set(self.values[C.cod(f)]), set(self.values[C.dom(f)])
            if set(m) != src:
                raise PresheafError(f"restriction along {f} must be defined on {sorted(src)}", witness=(f,))
            for x, y in m.items():
                if y not in tgt:
                    raise PresheafError(f"restriction along {f} sends {x} outside {C.dom(f)}", witness=(f, x))
        for c in C.objects:
            i = C.identity(c)
            if any(self.restriction[i][x] != x for x in self.values[c]):
                raise PresheafError(f"restriction along {i} is not the identity", witness=(i,))
        for (g, f), gf in C._table.items():
            for x in self.values[C.cod(g)]:
                if self.restriction[gf][x] != self.restriction[f][self.restriction[g][x]]:
                    raise PresheafError(f"functoriality fails for {g}∘{f} at {x}", witness=(g, f, x))

    def __eq__(self, other):
        if not isinstance(other, Presheaf):
            return NotImplemented
        return self.category == other.category and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = self.name or "Presheaf"
        sizes = ", ".join(f"{c}:{len(v)}" for c, v in self.values.items())
        return f"<{label} {sizes}>"

    def restrict(self, f: str, e: str) -> str:
        """``E(f)(e)``."""
        return self.restriction[f][e]

    def size(self) -> int:
        return sum(len(v) for v in self.values.values())

    def to_dict(self) -> dict:
        return {
            "category": self.category.name,
            "values": {c: list(v) for c, v in self.values.items()},
            "restriction": {f: dict(sorted(self.restriction[f].items())) for f in self.category.arrows},
        }

    @classmethod
    def from_dict(cls, C: FiniteCategory, data, name="") -> Presheaf:
        try:
            values, restriction = data["values"], data["restriction"]
        except (KeyError, TypeError):
            raise ParseError("presheaf description needs values and restriction") from None
        unknown = (set(values) - set(C.objects)) | (set(restriction) - set(C.arrows))
        if unknown:
            raise ParseError(f"presheaf mentions unknown names {sorted(unknown)}", witness=sorted(unknown))
        return cls(C, values, restriction, name=name or data.get("name", ""))


class Subpresheaf:
    """Object-indexed subsets of a presheaf, closed under restriction."""

    __slots__ = ("parent", "chosen", "_hash")

    def __init__(self, parent: Presheaf, chosen: Mapping[str, Iterable[str]], _check=True):
        self.parent = parent
        C = parent.category
        self.chosen = {c: frozenset(chosen.get(c, ())) for c in C.objects}
        if _check:
            for c, xs in self.chosen.items():
                extra = xs - set(parent.values[c])
                if extra:
                    raise ElementNotFound(f"{sorted(extra)} not in E({c})", witness=(c, sorted(extra)))
            for f in C.arrows:
                for x in self.chosen[C.cod(f)]:
                    if parent.restrict(f, x) not in self.chosen[C.dom(f)]:
                        raise PresheafError(f"not closed: E({f})({x}) missing", witness=(f, x))
        self._hash = hash(tuple(sorted(self.chosen.items())))

    def __eq__(self, other):
        if not isinstance(other, Subpresheaf):
            return NotImplemented
        return self.chosen == other.chosen and self.parent == other.parent

    def __hash__(self):
        return self._hash

    def __le__(self, other):
        _same_parent(self, other)
        return all(self.chosen[c] <= other.chosen[c] for c in self.chosen)

    def __repr__(self):
        parts = ", ".join(f"{c}:{{{','.join(sorted(v))}}}" for c, v in self.chosen.items())
        return f"Subpresheaf({parts})"

    def sort_key(self):
        return (sum(len(v) for v in self.chosen.values()),
                tuple((c, tuple(sorted(v))) for c, v in sorted(self.chosen.items())))

    def to_dict(self) -> dict:
        return {"presheaf": self.parent.name, "chosen": {c: sorted(v) for c, v in self.chosen.items()}}

    @classmethod
    def from_dict(cls, E: Presheaf, data) -> Subpresheaf:
        try:
            chosen = data["chosen"]
        except (KeyError, TypeError):
            raise ParseError("subpresheaf description needs chosen") from None
        return cls(E, chosen)


def _same_parent(A: Subpresheaf, B: Subpresheaf):
    if A.parent != B.parent:
        raise ParentMismatch("subpresheaves of different presheaves")


def load_presheaf(path: str | Path, C: FiniteCategory) -> Presheaf:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return Presheaf.from_dict(C, data, name=data.get("name") or path.stem)


def presheaf_fixture(name: str, C: FiniteCategory) -> Presheaf:
    text = resources.files("finsite.fixtures").joinpath(f"{name}.json").read_text("utf-8")
    data = json.loads(text)
    return Presheaf.from_dict(C, data, name=name)


def fixture_presheaves(C: FiniteCategory) -> list[Presheaf]:
    """Representables, the terminal presheaf and any bundled presheaves over ``C``."""
    out = [yoneda(C, c) for c in C.objects]
    out.append(terminal_presheaf(C))
    for name in PRESHEAF_FIXTURES.get(C.name, ()):
        out.append(presheaf_fixture(name, C))
    return out


def yoneda(C: FiniteCategory, c: str) -> Presheaf:
    """The representable presheaf ``Hom(-, c)``; elements are arrow names."""
    values = {d: C.hom(d, c) for d in C.objects}
    restriction = {f: {x: C.compose(x, f) for x in values[C.cod(f)]} for f in C.arrows}
    return Presheaf(C, values, restriction, name=f"y({c})", representing=c, _check=False)


def terminal_presheaf(C: FiniteCategory) -> Presheaf:
    return Presheaf(C, {c: ("*",) for c in C.objects}, {f: {"*": "*"} for f in C.arrows},
                    name="1", _check=False)


def empty_sub(E: Presheaf) -> Subpresheaf:
    return Subpresheaf(E, {}, _check=False)


def full_sub(E: Presheaf) -> Subpresheaf:
    return Subpresheaf(E, E.values, _check=False)


def sieve_to_subpresheaf(S: Sieve, E: Presheaf | None = None) -> Subpresheaf:
    C = S.category
    if E is None:
        E = yoneda(C, S.cod)
    elif E.representing != S.cod or E.category != C:
        raise ParentMismatch(f"{E!r} is not the representable on {S.cod}")
    return Subpresheaf(E, {d: {f for f in S.arrows if C.dom(f) == d} for d in C.objects}, _check=False)


def subpresheaf_to_sieve(A: Subpresheaf) -> Sieve:
    E = A.parent
    if E.representing is None:
        raise ParentMismatch("parent presheaf is not representable")
    return Sieve(E.category, E.representing, set().union(*A.chosen.values()), _check=False)


def sub_meet(A: Subpresheaf, B: Subpresheaf) -> Subpresheaf:
    _same_parent(A, B)
    return Subpresheaf(A.parent, {c: A.chosen[c] & B.chosen[c] for c in A.chosen}, _check=False)


def sub_join(A: Subpresheaf, B: Subpresheaf) -> Subpresheaf:
    _same_parent(A, B)
    return Subpresheaf(A.parent, {c: A.chosen[c] | B.chosen[c] for c in A.chosen}, _check=False)


def sub_implies(A: Subpresheaf, B: Subpresheaf) -> Subpresheaf:
    """Elements all of whose restrictions lying in ``A`` also lie in ``B``."""
    _same_parent(A, B)
    E = A.parent
    C = E.category
    chosen = {}
    for c in C.objects:
        chosen[c] = {e for e in E.values[c]
                     if all(E.restrict(f, e) in B.chosen[C.dom(f)]
                            for f in C.arrows_into(c) if E.restrict(f, e) in A.chosen[C.dom(f)])}
    return Subpresheaf(E, chosen, _check=False)


def sub_not(A: Subpresheaf) -> Subpresheaf:
    """Elements none of whose restrictions land in ``A``."""
    E = A.parent
    C = E.category
    chosen = {c: {e for e in E.values[c]
                  if all(E.restrict(f, e) not in A.chosen[C.dom(f)] for f in C.arrows_into(c))}
              for c in C.objects}
    return Subpresheaf(E, chosen, _check=False)


def element_sieve(A: Subpresheaf, c: str, e: str) -> Sieve:
    """``{f: d → c | E(f)(e) ∈ A(d)}``."""
    E = A.parent
    C = E.category
    if c not in C.objects or e not in E.values[c]:
        raise ElementNotFound(f"{e!r} is not an element of E({c})", witness=(c, e))
    return Sieve(C, c, (f for f in C.arrows_into(c) if E.restrict(f, e) in A.chosen[C.dom(f)]),
                 _check=False)


def _check_category(J: GrothendieckTopology, A: Subpresheaf):
    if J.category != A.parent.category:
        raise CategoryMismatch("topology and subpresheaf live over different categories")


def close_subobject(J: GrothendieckTopology, A: Subpresheaf) -> Subpresheaf:
    """Elements whose element sieve is J-covering."""
    _check_category(J, A)
    E = A.parent
    return Subpresheaf(E, {c: {e for e in E.values[c] if J.is_covering(element_sieve(A, c, e))}
                           for c in E.values}, _check=False)


def is_closed_subobject(J: GrothendieckTopology, A: Subpresheaf) -> bool:
    return close_subobject(J, A) == A


def is_dense_mono(J: GrothendieckTopology, A: Subpresheaf) -> bool:
    return close_subobject(J, A) == full_sub(A.parent)


def densifying_topology(J: GrothendieckTopology, A: Subpresheaf) -> GrothendieckTopology:
    """Least topology containing ``J`` for which ``A ↪ E`` is dense."""
    _check_category(J, A)
    E = A.parent
    extra = [(c, element_sieve(A, c, e)) for c in E.values for e in E.values[c]]
    return generate_topology(J.category, family_of(J) + extra)


def closed_sub_not(J: GrothendieckTopology, A: Subpresheaf) -> Subpresheaf:
    """Pseudocomplement of a J-closed subobject inside the lattice of J-closed subobjects."""
    if not is_closed_subobject(J, A):
        raise NotClosed(f"{A!r} is not closed for the given topology", witness=A)
    return sub_implies(A, close_subobject(J, empty_sub(A.parent)))


def enumerate_subpresheaves(E: Presheaf, bound: int = DEFAULT_ELEMENT_BOUND) -> list[Subpresheaf]:
    """All subpresheaves of ``E`` in canonical order.

    Raises TooLarge when ``E`` has more than ``bound`` elements in total.
    """
    if E.size() > bound:
        raise TooLarge(f"presheaf has {E.size()} elements, bound is {bound}", witness=E.size())
    C = E.category
    principal = set()
    for c in C.objects:
        for e in E.values[c]:
            gen = frozenset((C.dom(f), E.restrict(f, e)) for f in C.arrows_into(c))
            principal.add(gen)
    found = {frozenset()}
    for p in principal:
        found |= {s | p for s in found}
    subs = [Subpresheaf(E, {c: {x for d, x in s if d == c} for c in C.objects}, _check=False)
            for s in found]
    return sorted(subs, key=Subpresheaf.sort_key)
