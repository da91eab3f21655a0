"""Category builders and hypothesis strategies shared by the test modules."""

from itertools import product

from hypothesis import strategies as st

from finsite.fincat import validate_category
from finsite.sieve import Sieve


def poset_category(n, less):
    """Preorder category on ``0..n-1`` from a strict relation, transitively closed."""
    le = {(i, i) for i in range(n)} | set(less)
    changed = True
    while changed:
        changed = False
        for (i, j), (k, l) in product(list(le), list(le)):
            if j == k and (i, l) not in le:
                le.add((i, l))
                changed = True
    name = {p: f"r{p[0]}{p[1]}" for p in le}
    objects = [str(i) for i in range(n)]
    return validate_category({
        "objects": objects,
        "arrows": [{"name": name[p], "dom": str(p[0]), "cod": str(p[1])} for p in sorted(le)],
        "identities": {str(i): name[i, i] for i in range(n)},
        "compose": [{"first": name[i, j], "then": name[j, k], "result": name[i, k]}
                    for (i, j) in le for (j2, k) in le if j == j2],
    }, name=f"POSET{n}")


def monoid_category(n, generators):
    """One-object category of the transformation monoid on ``n`` points spanned by ``generators``."""
    ident = tuple(range(n))
    elems = {ident}
    frontier = [tuple(g) for g in generators]
    while frontier:
        t = frontier.pop()
        if t in elems:
            continue
        elems.add(t)
        frontier.extend(tuple(t[s[x]] for x in range(n)) for s in list(elems))
        frontier.extend(tuple(s[t[x]] for x in range(n)) for s in list(elems))
    label = {t: "t" + "".join(map(str, t)) for t in elems}
    return validate_category({
        "objects": ["*"],
        "arrows": [{"name": label[t], "dom": "*", "cod": "*"} for t in sorted(elems)],
        "identities": {"*": label[ident]},
        # (g∘f)(x) = g(f(x))
        "compose": [{"first": label[f], "then": label[g], "result": label[tuple(g[f[x]] for x in range(n))]}
                    for f in elems for g in elems],
    }, name=f"MON{n}")


@st.composite
def posets(draw, max_objects=3):
    n = draw(st.integers(1, max_objects))
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    less = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return poset_category(n, less)


@st.composite
def monoids(draw, points=2):
    maps = st.tuples(*[st.integers(0, points - 1)] * points)
    gens = draw(st.lists(maps, max_size=2))
    return monoid_category(points, gens)


small_categories = st.one_of(posets(), monoids())


def sv(C, c, *arrows):
    """Shorthand for a validated sieve."""
    return Sieve(C, c, arrows)
