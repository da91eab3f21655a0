"""Sieves on an object and their Heyting algebra operations."""

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache

from .errors import CategoryMismatch, CodomainMismatch, NotASieve, WrongCodomain
from .fincat import FiniteCategory


class Sieve:
    """A precomposition-closed set of arrows with common codomain ``cod``."""

    __slots__ = ("category", "cod", "arrows", "_hash")

    def __init__(self, category: FiniteCategory, cod: str, arrows: Iterable[str], _check=True):
        self.category = category
        self.cod = cod
        self.arrows = frozenset(arrows)
        if _check:
            if cod not in category.objects:
                raise KeyError(f"unknown object {cod!r}")
            for f in self.arrows:
                if f not in category.arrows or category.cod(f) != cod:
                    raise WrongCodomain(f"{f} is not an arrow into {cod}", witness=(f,))
            for f in self.arrows:
                for g in category.arrows_into(category.dom(f)):
                    if category.compose(f, g) not in self.arrows:
                        raise NotASieve(f"{f}∘{g} is missing", witness=(f, g))
        self._hash = hash((cod, self.arrows))

    def __eq__(self, other):
        if not isinstance(other, Sieve):
            return NotImplemented
        return (self.cod == other.cod and self.arrows == other.arrows
                and self.category == other.category)

    def __hash__(self):
        return self._hash

    def __le__(self, other: Sieve) -> bool:
        _same_codomain(self, other)
        return self.arrows <= other.arrows

    def __lt__(self, other: Sieve) -> bool:
        _same_codomain(self, other)
        return self.arrows < other.arrows

    def __ge__(self, other: Sieve) -> bool:
        return other <= self

    def __len__(self):
        return len(self.arrows)

    def __iter__(self):
        return iter(sorted(self.arrows))

    def __contains__(self, f):
        return f in self.arrows

    def __repr__(self):
        return f"Sieve({self.cod}: {{{', '.join(sorted(self.arrows))}}})"

    @property
    def is_empty(self) -> bool:
        return not self.arrows

    @property
    def is_maximal(self) -> bool:
        # a sieve containing the identity contains every arrow into cod
        return self.category.identity(self.cod) in self.arrows

    def sort_key(self):
        return (self.cod, len(self.arrows), tuple(sorted(self.arrows)))

    def to_dict(self) -> dict:
        return {"cod": self.cod, "arrows": sorted(self.arrows)}

    @classmethod
    def from_dict(cls, C: FiniteCategory, data) -> Sieve:
        return cls(C, data["cod"], data["arrows"])


def _same_codomain(S: Sieve, T: Sieve) -> None:
    if S.category != T.category:
        raise CategoryMismatch("sieves live over different categories")
    if S.cod != T.cod:
        raise CodomainMismatch(f"sieves on {S.cod} and {T.cod}", witness=(S.cod, T.cod))


def maximal_sieve(C: FiniteCategory, c: str) -> Sieve:
    return Sieve(C, c, C.arrows_into(c), _check=False)


def empty_sieve(C: FiniteCategory, c: str) -> Sieve:
    return Sieve(C, c, (), _check=False)


def generate_sieve(C: FiniteCategory, c: str, gens: Iterable[str]) -> Sieve:
    """Smallest sieve on ``c`` containing ``gens``."""
    gens = list(gens)
    for f in gens:
        if f not in C.arrows or C.cod(f) != c:
            raise WrongCodomain(f"generator {f} does not have codomain {c}", witness=(f,))
    out: set[str] = set()
    frontier = list(gens)
    while frontier:
        f = frontier.pop()
        if f in out:
            continue
        out.add(f)
        frontier.extend(C.compose(f, g) for g in C.arrows_into(C.dom(f)))
    return Sieve(C, c, out, _check=False)


def pullback_sieve(S: Sieve, f: str) -> Sieve:
    """``f*(S) = {g | f∘g ∈ S}`` on ``dom(f)``."""
    C = S.category
    if f not in C.arrows:
        raise CategoryMismatch(f"{f} is not an arrow of the sieve's category", witness=(f,))
    if C.cod(f) != S.cod:
        raise WrongCodomain(f"{f} does not land in {S.cod}", witness=(f,))
    d = C.dom(f)
    return Sieve(C, d, (g for g in C.arrows_into(d) if C.compose(f, g) in S.arrows), _check=False)


def sieve_union(S: Sieve, T: Sieve) -> Sieve:
    _same_codomain(S, T)
    return Sieve(S.category, S.cod, S.arrows | T.arrows, _check=False)


def sieve_intersection(S: Sieve, T: Sieve) -> Sieve:
    _same_codomain(S, T)
    return Sieve(S.category, S.cod, S.arrows & T.arrows, _check=False)


def is_stably_nonempty(S: Sieve) -> bool:
    """Every pullback of ``S`` along an arrow into its codomain is nonempty."""
    return all(pullback_sieve(S, f).arrows for f in S.category.arrows_into(S.cod))


def sieve_not(R: Sieve) -> Sieve:
    C = R.category
    return Sieve(C, R.cod, (f for f in C.arrows_into(R.cod) if not pullback_sieve(R, f).arrows),
                 _check=False)


def sieve_not_not(R: Sieve) -> Sieve:
    C = R.category
    return Sieve(C, R.cod, (f for f in C.arrows_into(R.cod)
                            if is_stably_nonempty(pullback_sieve(R, f))), _check=False)


def sieve_implies(S: Sieve, T: Sieve) -> Sieve:
    _same_codomain(S, T)
    C = S.category
    return Sieve(C, S.cod, (f for f in C.arrows_into(S.cod)
                            if pullback_sieve(S, f) <= pullback_sieve(T, f)), _check=False)


@lru_cache(maxsize=None)
def _sieves_on(C: FiniteCategory, c: str) -> tuple[Sieve, ...]:
    # every sieve is a union of the principal sieves of its members
    principal = {generate_sieve(C, c, [f]).arrows for f in C.arrows_into(c)}
    found = {frozenset()}
    for p in principal:
        found |= {s | p for s in found}
    sieves = (Sieve(C, c, s, _check=False) for s in found)
    return tuple(sorted(sieves, key=Sieve.sort_key))


def enumerate_sieves(C: FiniteCategory, c: str) -> tuple[Sieve, ...]:
    """All sieves on ``c`` in canonical order (by size, then arrow names)."""
    if c not in C.objects:
        raise KeyError(f"unknown object {c!r}")
    return _sieves_on(C, c)


def sieve_count(C: FiniteCategory) -> int:
    return sum(len(enumerate_sieves(C, c)) for c in C.objects)
