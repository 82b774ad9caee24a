"""Ideaux, filtres, clotures, convexite et treillis des ideaux (filtres)."""

import logging
from enum import Enum
from itertools import combinations

from .config import get_limit
from .errors import SizeExceeded, StructureNotLattice
from .poset import MAX_ELEMENTS, ElementSet, Poset, Verdict, iter_bits
from .quasi_ops import Kind, classify

logger = logging.getLogger(__name__)


class StructureKind(str, Enum):
    IDEAL = "ideal"
    FILTER = "filter"


def _tables(poset: Poset, kind: StructureKind):
    """(table de l'operation de la clause (i), masques de la clause (ii))."""
    if kind is StructureKind.IDEAL:
        return poset.mub_table, poset.down
    return poset.mlb_table, poset.up


def subset_key(mask: ElementSet) -> tuple[int, tuple[int, ...]]:
    """Ordre canonique des sous-ensembles: taille, puis indices croissants."""
    return mask.bit_count(), tuple(iter_bits(mask))


def structure_label(poset: Poset, mask: ElementSet) -> str:
    """Descripteur stable: labels tries, separes par ';', entre accolades."""
    return "{" + ";".join(sorted(poset.names(mask))) + "}"


# ============================================================================
# VERIFICATIONS
# ============================================================================

def is_closed_structure(poset: Poset, subset: ElementSet, kind: StructureKind) -> Verdict:
    """
    Ideal: (i) a, b dans S => {a}v{b} inclus dans S, (ii) S clos vers le bas.
    Filtre: clauses duales.
    """
    kind = StructureKind(kind)
    table, closed = _tables(poset, kind)
    labels = poset.labels
    members = list(iter_bits(subset))

    for pos, a in enumerate(members):
        for b in members[pos:]:
            outside = table[a][b] & ~subset
            if outside:
                detail = f"{', '.join(poset.names(table[a][b]))} not in set"
                return Verdict.fail('i', (labels[a], labels[b]), detail)

    for a in members:
        outside = closed[a] & ~subset
        if outside:
            b = next(iter_bits(outside))
            return Verdict.fail('ii', (labels[a], labels[b]))
    return Verdict.ok()


def closure(poset: Poset, subset: ElementSet, kind: StructureKind) -> ElementSet:
    """Plus petit ideal (A] ou filtre [A) contenant A (point fixe)."""
    kind = StructureKind(kind)
    table, closed = _tables(poset, kind)
    current = subset
    while True:
        grown = current
        for a in iter_bits(current):
            grown |= closed[a]
        members = list(iter_bits(grown))
        for pos, a in enumerate(members):
            row = table[a]
            for b in members[pos:]:
                grown |= row[b]
        if grown == current:
            return current
        current = grown


def is_convex(poset: Poset, subset: ElementSet) -> Verdict:
    """x, y dans C et x <= a <= y => a dans C; temoin (x, a, y)."""
    labels = poset.labels
    for x in iter_bits(subset):
        for y in iter_bits(poset.up[x] & subset):
            missing = poset.up[x] & poset.down[y] & ~subset
            if missing:
                a = next(iter_bits(missing))
                return Verdict.fail('convex', (labels[x], labels[a], labels[y]))
    return Verdict.ok()


def is_sub_quasi_lattice(poset: Poset, subset: ElementSet) -> Verdict:
    """{x}v{y} et {x}^{y}, calcules dans P, restent dans Q."""
    labels = poset.labels
    members = list(iter_bits(subset))
    for pos, x in enumerate(members):
        for y in members[pos:]:
            for reason, found in (('join', poset.mub_table[x][y]), ('meet', poset.mlb_table[x][y])):
                if found & ~subset:
                    return Verdict.fail(reason, (labels[x], labels[y]),
                                        f"{', '.join(poset.names(found))} not in set")
    return Verdict.ok()


# ============================================================================
# ENUMERATION
# ============================================================================

def _check_bound(poset: Poset):
    limit = get_limit('structure_limit')
    if poset.n > limit:
        raise SizeExceeded(f"{poset.n} elements, enumeration des structures limitee a {limit}")


def closed_sets(poset: Poset, kind: StructureKind) -> list[ElementSet]:
    """Ensembles clos vers le bas (ideaux) ou vers le haut (filtres), sans la clause (i)."""
    _, closed = _tables(poset, StructureKind(kind))
    # extension lineaire: un predecesseur a un cone strictement plus petit
    order = sorted(range(poset.n), key=lambda i: (closed[i].bit_count(), i))
    found = []

    def backtrack(pos: int, current: ElementSet):
        if pos == len(order):
            found.append(current)
            return
        e = order[pos]
        backtrack(pos + 1, current)
        if closed[e] & ~(1 << e) & ~current == 0:
            backtrack(pos + 1, current | 1 << e)

    backtrack(0, 0)
    return found


def all_structures(poset: Poset, kind: StructureKind) -> list[ElementSet]:
    """Tous les ideaux (filtres), vide et ensemble complet compris, ordre canonique."""
    kind = StructureKind(kind)
    _check_bound(poset)
    structures = [s for s in closed_sets(poset, kind) if is_closed_structure(poset, s, kind)]
    return sorted(structures, key=subset_key)


def check_structure_lattice(poset: Poset, kind: StructureKind) -> tuple[Poset, Verdict]:
    """
    Construit I(P) (inclusion) ou F(P) (inclusion inverse) et verifie que c'est
    un treillis ou rencontre et jointure sont l'intersection et la cloture de
    l'union (roles echanges pour les filtres).
    """
    kind = StructureKind(kind)
    structures = all_structures(poset, kind)
    if len(structures) > MAX_ELEMENTS:
        raise SizeExceeded(f"{len(structures)} {kind.value}s, maximum {MAX_ELEMENTS} elements par poset")
    up = []
    for s in structures:
        if kind is StructureKind.IDEAL:
            above = [j for j, t in enumerate(structures) if s & t == s]
        else:
            above = [j for j, t in enumerate(structures) if s & t == t]
        mask = 0
        for j in above:
            mask |= 1 << j
        up.append(mask)
    lattice = Poset(tuple(structure_label(poset, s) for s in structures), tuple(up))

    if classify(lattice).kind is not Kind.LATTICE:
        return lattice, Verdict.fail('lattice', (), f"{kind.value} structures are not a lattice")

    position = {s: i for i, s in enumerate(structures)}
    for i, j in combinations(range(len(structures)), 2):
        s, t = structures[i], structures[j]
        intersection = position.get(s & t)
        joined = position.get(closure(poset, s | t, kind))
        if kind is StructureKind.IDEAL:
            expected_meet, expected_join = intersection, joined
        else:
            expected_meet, expected_join = joined, intersection
        witness = (lattice.labels[i], lattice.labels[j])
        if lattice.mlb_table[i][j] != (1 << expected_meet if expected_meet is not None else 0):
            return lattice, Verdict.fail('meet', witness)
        if lattice.mub_table[i][j] != (1 << expected_join if expected_join is not None else 0):
            return lattice, Verdict.fail('join', witness)
    return lattice, Verdict.ok()


def structure_lattice(poset: Poset, kind: StructureKind) -> Poset:
    """Treillis complet des ideaux (filtres) de P."""
    lattice, verdict = check_structure_lattice(poset, kind)
    if not verdict:
        raise StructureNotLattice(f"{StructureKind(kind).value} de P", verdict)
    return lattice
