"""Small builders shared across test modules."""

from posetlim.abgroup import AbHom, cyclic_group, free_group
from posetlim.diagram import (
    constant_diagram,
    direct_sum_diagrams,
    representable_diagram,
    skyscraper_diagram,
    validate_functor,
)
from posetlim.poset import validate_graded


def pushout_poset():
    return validate_graded(
        [("a", 0), ("b", 1), ("c", 1)], [("a", "b"), ("a", "c")])


def intro_pushout():
    """Z <-x2- Z -x2-> Z over the pushout poset."""
    P = pushout_poset()
    Z = free_group(1)
    two = AbHom(Z, Z, [[2]])
    return validate_functor(
        P, {"a": Z, "b": Z, "c": Z},
        {("a", "b"): two, ("a", "c"): two})


def pullback_poset():
    return validate_graded(
        [("b", 0), ("c", 0), ("a", 1)], [("b", "a"), ("c", "a")])


def times_two_pullback():
    """Z -x2-> Z <-x2- Z over the pullback poset."""
    P = pullback_poset()
    Z = free_group(1)
    two = AbHom(Z, Z, [[2]])
    return validate_functor(
        P, {i: Z for i in P.ids},
        {("b", "a"): two, ("c", "a"): two})


def random_torsion_sum_diagram(rng, P, parts_range=(2, 5)):
    """Sum of standard diagrams with random parameters; functorial by
    construction over any poset, with plenty of torsion."""
    parts = []
    for _ in range(rng.randrange(*parts_range)):
        kind = rng.choice(["representable", "skyscraper", "constant"])
        at = rng.choice(P.ids)
        if kind == "representable":
            parts.append(representable_diagram(P, at))
        elif kind == "skyscraper":
            parts.append(skyscraper_diagram(P, at, cyclic_group(rng.choice([2, 3, 4]))))
        else:
            parts.append(constant_diagram(P, cyclic_group(rng.choice([2, 4, 6]))))
    total, _, _ = direct_sum_diagrams(parts)
    return total


def random_forest_poset(rng, max_objects=7):
    """Each new object either starts a new root or covers an existing
    object; single parents mean no diamonds ever."""
    n = rng.randrange(1, max_objects + 1)
    objects = [("v0", 0)]
    covers = []
    degrees = {"v0": 0}
    for k in range(1, n):
        ident = f"v{k}"
        if rng.random() < 0.25:
            degrees[ident] = 0
            objects.append((ident, 0))
        else:
            parent = rng.choice(sorted(degrees))
            degrees[ident] = degrees[parent] + 1
            objects.append((ident, degrees[ident]))
            covers.append((parent, ident))
    return validate_graded(objects, covers)


def random_free_forest_diagram(rng, P, max_rank=3, max_entry=3):
    """Free groups with arbitrary integer matrices on a forest; unique
    paths make any choice functorial."""
    ranks = {i: rng.randrange(0, max_rank + 1) for i in P.ids}
    groups = {i: free_group(ranks[i]) for i in P.ids}
    maps = {}
    for a, b in P.covers:
        mat = [[rng.randrange(-max_entry, max_entry + 1)
                for _ in range(ranks[a])] for _ in range(ranks[b])]
        maps[(a, b)] = AbHom(groups[a], groups[b], mat)
    return validate_functor(P, groups, maps)
