"""Finite categories given by explicit composition tables."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from importlib import resources
from itertools import product
from pathlib import Path

from .errors import (
    AssociativityViolation,
    DomCodMismatch,
    IdentityViolation,
    MissingComposite,
    ParseError,
)

FIXTURE_NAMES = ("WALK", "SPAN", "COSPAN", "Z2", "M2", "TERM", "DISC2", "PAIR")


class FiniteCategory:
    """An immutable, validated finite category.

    Arrows are named; ``compose(g, f)`` is ``g∘f`` (first ``f``, then ``g``).
    Build instances with :func:`validate_category` rather than calling the
    constructor with unchecked data.
    """

    __slots__ = ("name", "objects", "arrows", "_dom", "_cod", "_id", "_table",
                 "_into", "_from", "_hom", "_key", "_hash")

    def __init__(self, objects, arrows, identities, table, name=""):
        self.name = name
        self.objects = tuple(sorted(objects))
        self._dom = {a: d for a, (d, _) in arrows.items()}
        self._cod = {a: c for a, (_, c) in arrows.items()}
        self.arrows = tuple(sorted(arrows))
        self._id = dict(identities)
        self._table = dict(table)
        self._into = {c: tuple(a for a in self.arrows if self._cod[a] == c) for c in self.objects}
        self._from = {c: tuple(a for a in self.arrows if self._dom[a] == c) for c in self.objects}
        self._hom = {(x, y): tuple(a for a in self._into[y] if self._dom[a] == x)
                     for x in self.objects for y in self.objects}
        self._key = (
            self.objects,
            tuple((a, self._dom[a], self._cod[a]) for a in self.arrows),
            tuple(sorted(self._id.items())),
            tuple(sorted(self._table.items())),
        )
        self._hash = hash(self._key)

    # structural equality: the display name is metadata
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "FiniteCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    def dom(self, f: str) -> str:
        return self._dom[f]

    def cod(self, f: str) -> str:
        return self._cod[f]

    def identity(self, c: str) -> str:
        return self._id[c]

    def is_identity(self, f: str) -> bool:
        return self._id[self._dom[f]] == f

    def compose(self, g: str, f: str) -> str:
        """Return ``g∘f``."""
        try:
            return self._table[g, f]
        except KeyError:
            raise DomCodMismatch(f"{g}∘{f} is not composable", witness=(g, f)) from None

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom[x, y]

    def arrows_into(self, c: str) -> tuple[str, ...]:
        return self._into[c]

    def arrows_from(self, c: str) -> tuple[str, ...]:
        return self._from[c]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [{"name": a, "dom": self._dom[a], "cod": self._cod[a]} for a in self.arrows],
            "identities": {c: self._id[c] for c in self.objects},
            "compose": [{"first": f, "then": g, "result": r}
                        for (g, f), r in sorted(self._table.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
        }


def _require(raw, key, kind):
    if not isinstance(raw, Mapping) or key not in raw:
        raise ParseError(f"category description is missing {key!r}", witness=key)
    value = raw[key]
    if not isinstance(value, kind):
        raise ParseError(f"{key!r} has the wrong type", witness=key)
    return value


def validate_category(raw: Mapping, name: str | None = None) -> FiniteCategory:
    """Check a parsed category description exhaustively and freeze it.

    Raises the specific :class:`~finsite.errors.CategoryError` subclass for the
    first violated law, naming the witnessing arrows.
    """
    objects = _require(raw, "objects", list)
    arrow_list = _require(raw, "arrows", list)
    identities = _require(raw, "identities", Mapping)
    compose = _require(raw, "compose", list)
    if name is None:
        name = raw.get("name", "") if isinstance(raw, Mapping) else ""

    objs = set()
    for o in objects:
        if not isinstance(o, str) or not o:
            raise ParseError(f"bad object name {o!r}", witness=o)
        if o in objs:
            raise ParseError(f"duplicate object {o!r}", witness=o)
        objs.add(o)

    arrows: dict[str, tuple[str, str]] = {}
    for entry in arrow_list:
        try:
            a, d, c = entry["name"], entry["dom"], entry["cod"]
        except (KeyError, TypeError):
            raise ParseError(f"arrow entry {entry!r} needs name, dom and cod", witness=entry) from None
        if not isinstance(a, str) or not a:
            raise ParseError(f"bad arrow name {a!r}", witness=a)
        if a in arrows:
            raise ParseError(f"duplicate arrow {a!r}", witness=a)
        if d not in objs or c not in objs:
            raise DomCodMismatch(f"arrow {a} refers to an unknown object", witness=(a,))
        arrows[a] = (d, c)

    for o in objs:
        i = identities.get(o)
        if i is None:
            raise IdentityViolation(f"object {o} has no identity", witness=(o,))
        if i not in arrows or arrows[i] != (o, o):
            raise IdentityViolation(f"identity {i} of {o} must be an arrow {o}→{o}", witness=(i,))
    extra = set(identities) - objs
    if extra:
        raise ParseError(f"identities given for unknown objects {sorted(extra)}", witness=sorted(extra))

    table: dict[tuple[str, str], str] = {}
    for entry in compose:
        try:
            f, g, r = entry["first"], entry["then"], entry["result"]
        except (KeyError, TypeError):
            raise ParseError(f"compose entry {entry!r} needs first, then and result", witness=entry) from None
        for a in (f, g, r):
            if a not in arrows:
                raise ParseError(f"compose entry mentions unknown arrow {a!r}", witness=a)
        if arrows[f][1] != arrows[g][0]:
            raise DomCodMismatch(f"{g}∘{f}: cod({f}) ≠ dom({g})", witness=(g, f))
        if arrows[r] != (arrows[f][0], arrows[g][1]):
            raise DomCodMismatch(f"{g}∘{f} = {r} has the wrong domain or codomain", witness=(g, f, r))
        if (g, f) in table and table[g, f] != r:
            raise ParseError(f"conflicting entries for {g}∘{f}", witness=(g, f))
        table[g, f] = r

    names = sorted(arrows)
    for f, g in product(names, names):
        if arrows[f][1] == arrows[g][0] and (g, f) not in table:
            raise MissingComposite(f"composite {g}∘{f} is missing", witness=(g, f))

    for f in names:
        d, c = arrows[f]
        if table[identities[c], f] != f or table[f, identities[d]] != f:
            raise IdentityViolation(f"identity law fails for {f}", witness=(f,))

    for f, g, h in product(names, names, names):
        if arrows[f][1] == arrows[g][0] and arrows[g][1] == arrows[h][0]:
            if table[h, table[g, f]] != table[table[h, g], f]:
                raise AssociativityViolation(
                    f"({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})", witness=(f, g, h))

    return FiniteCategory(objs, arrows, {o: identities[o] for o in objs}, table, name=name)


def load_category(path: str | Path) -> FiniteCategory:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(raw, Mapping):
        raise ParseError(f"{path}: expected a JSON object")
    return validate_category(raw, name=raw.get("name") or path.stem.upper())


def fixture(name: str) -> FiniteCategory:
    """Load one of the bundled categories (WALK, SPAN, COSPAN, Z2, M2, TERM, DISC2, PAIR)."""
    key = name.upper()
    if key not in FIXTURE_NAMES:
        raise KeyError(f"no bundled category named {name!r}")
    text = resources.files("finsite.fixtures").joinpath(f"{key.lower()}.json").read_text("utf-8")
    return validate_category(json.loads(text), name=key)


def fixtures() -> dict[str, FiniteCategory]:
    return {n: fixture(n) for n in FIXTURE_NAMES}


def opposite(C: FiniteCategory) -> FiniteCategory:
    name = C.name[:-3] if C.name.endswith("^op") else (C.name + "^op" if C.name else "")
    arrows = {a: (C.cod(a), C.dom(a)) for a in C.arrows}
    table = {(f, g): r for (g, f), r in C._table.items()}
    return FiniteCategory(C.objects, arrows, C._id, table, name=name)


def full_subcategory(C: FiniteCategory, objects: Iterable[str]) -> FiniteCategory:
    keep = set(objects)
    unknown = keep - set(C.objects)
    if unknown:
        raise KeyError(f"objects {sorted(unknown)} are not in {C.name or 'the category'}")
    arrows = {a: (C.dom(a), C.cod(a)) for a in C.arrows if C.dom(a) in keep and C.cod(a) in keep}
    table = {k: r for k, r in C._table.items() if k[0] in arrows and k[1] in arrows}
    label = f"{C.name}|{{{','.join(sorted(keep))}}}" if C.name else ""
    return FiniteCategory(keep, arrows, {o: C.identity(o) for o in keep}, table, name=label)


def is_full_subcategory(D: FiniteCategory, C: FiniteCategory) -> bool:
    if not set(D.objects) <= set(C.objects):
        return False
    return D == full_subcategory(C, D.objects)


def inverse_of(C: FiniteCategory, f: str) -> str | None:
    for g in C.hom(C.cod(f), C.dom(f)):
        if C.compose(g, f) == C.identity(C.dom(f)) and C.compose(f, g) == C.identity(C.cod(f)):
            return g
    return None


def is_groupoid(C: FiniteCategory) -> bool:
    return all(inverse_of(C, f) is not None for f in C.arrows)


def ore_witness(C: FiniteCategory) -> tuple[str, str] | None:
    """Return a cospan ``(f, g)`` with no commuting completion, or None."""
    for c in C.objects:
        into = C.arrows_into(c)
        for f, g in product(into, into):
            a, b = C.dom(f), C.dom(g)
            if not any(C.compose(f, h) == C.compose(g, k)
                       for d in C.objects for h in C.hom(d, a) for k in C.hom(d, b)):
                return f, g
    return None


def satisfies_right_ore(C: FiniteCategory) -> bool:
    """Every cospan ``a -f-> c <-g- b`` completes to a square ``f∘h = g∘k``."""
    return ore_witness(C) is None
