"""
Ensembles partiellement ordonnes finis.

Representation: les elements sont designes a l'exterieur par leur label et a
l'interieur par un indice dense. Un sous-ensemble (ElementSet) est un masque de
bits sur ces indices; `up[i]` est le masque des j tels que i <= j.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal, NamedTuple, Optional

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptyPoset,
    InvalidLabel,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
    SizeExceeded,
    UnknownLabel,
)

logger = logging.getLogger(__name__)

MAX_ELEMENTS = 64
FORBIDDEN_CHARS = frozenset('|,#')

# Sous-ensemble d'elements d'un poset, bit i <=> element d'indice i
ElementSet = int


def iter_bits(mask: ElementSet) -> Iterator[int]:
    """Indices presents dans le masque, par ordre croissant."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit(i: int) -> ElementSet:
    return 1 << i


def mask_of(indices: Iterable[int]) -> ElementSet:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


# ============================================================================
# VERDICT
# ============================================================================

@dataclass(frozen=True)
class Verdict:
    """
    Resultat d'une verification.

    `witness` et `reason` sont presents exactement quand `holds` est faux;
    rejouer le temoin contre le predicat reproduit l'echec. `detail` donne
    les deux membres d'une egalite violee.
    """

    holds: bool
    reason: Optional[str] = None
    witness: Optional[tuple[str, ...]] = None
    detail: Optional[str] = None

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def fail(cls, reason: str, witness: Iterable[str], detail: Optional[str] = None) -> "Verdict":
        return cls(False, reason, tuple(witness), detail)

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "holds"
        text = f"fails [{self.reason}] at ({', '.join(self.witness)})"
        if self.detail:
            text += f": {self.detail}"
        return text


# ============================================================================
# POSET
# ============================================================================

@dataclass(frozen=True)
class Poset:
    """
    Poset fini immuable.

    Le constructeur ne valide rien: passer par `from_covers` ou
    `from_relation` pour des donnees externes.
    """

    labels: tuple[str, ...]
    up: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i, ups in enumerate(self.up):
            for j in iter_bits(ups):
                down[j] |= 1 << i
        return tuple(down)

    @cached_property
    def full(self) -> ElementSet:
        return (1 << self.n) - 1

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def index_of(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownLabel(f"label inconnu: {label!r}") from None

    def mask(self, *labels: str) -> ElementSet:
        """Masque des labels donnes."""
        return mask_of(self.index_of(label) for label in labels)

    def names(self, mask: ElementSet) -> list[str]:
        """Labels du masque, par ordre d'indice."""
        return [self.labels[i] for i in iter_bits(mask)]

    def minimal(self, subset: ElementSet) -> ElementSet:
        return mask_of(i for i in iter_bits(subset) if self.down[i] & subset == 1 << i)

    def maximal(self, subset: ElementSet) -> ElementSet:
        return mask_of(i for i in iter_bits(subset) if self.up[i] & subset == 1 << i)

    @cached_property
    def mub_table(self) -> tuple[tuple[int, ...], ...]:
        """mub_table[i][j]: masque des bornes superieures minimales de {i, j}."""
        up = self.up
        return tuple(
            tuple(self.minimal(up[i] & up[j]) for j in range(self.n))
            for i in range(self.n)
        )

    @cached_property
    def mlb_table(self) -> tuple[tuple[int, ...], ...]:
        down = self.down
        return tuple(
            tuple(self.maximal(down[i] & down[j]) for j in range(self.n))
            for i in range(self.n)
        )

    @property
    def bottom(self) -> Optional[str]:
        for i, ups in enumerate(self.up):
            if ups == self.full:
                return self.labels[i]
        return None

    @property
    def top(self) -> Optional[str]:
        for i, downs in enumerate(self.down):
            if downs == self.full:
                return self.labels[i]
        return None

    def __repr__(self) -> str:
        return f"Poset({list(self.labels)}, covers={covers_of(self)})"


# ============================================================================
# CONSTRUCTION
# ============================================================================

def validate_label(label: str):
    """Label non vide, sans blanc ni caractere reserve (| , #)."""
    if not isinstance(label, str) or not label:
        raise InvalidLabel(f"label vide ou non textuel: {label!r}")
    if any(c.isspace() for c in label):
        raise InvalidLabel(f"label avec espace: {label!r}")
    if FORBIDDEN_CHARS & set(label):
        raise InvalidLabel(f"label avec caractere reserve (| , #): {label!r}")


def _check_labels(labels: Iterable[str]) -> tuple[str, ...]:
    labels = tuple(labels)
    if not labels:
        raise EmptyPoset("un poset doit avoir au moins un element")
    if len(labels) > MAX_ELEMENTS:
        raise SizeExceeded(f"{len(labels)} elements, maximum {MAX_ELEMENTS}")
    seen = set()
    for label in labels:
        validate_label(label)
        if label in seen:
            raise DuplicateLabel(f"label duplique: {label!r}")
        seen.add(label)
    return labels


def _resolve_pairs(index: dict[str, int], pairs) -> list[tuple[int, int]]:
    resolved = []
    for low, high in pairs:
        for label in (low, high):
            if label not in index:
                raise UnknownLabel(f"label inconnu: {label!r}")
        resolved.append((index[low], index[high]))
    return resolved


def from_covers(labels: Iterable[str], covers: Iterable[tuple[str, str]]) -> Poset:
    """
    Construit un poset a partir de son diagramme de Hasse.

    Args:
        labels: Noms des elements, dans l'ordre des indices
        covers: Paires (bas, haut), haut couvre bas

    Returns:
        Le poset dont l'ordre est la cloture reflexive-transitive des couvertures
    """
    labels = _check_labels(labels)
    index = {label: i for i, label in enumerate(labels)}

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(labels)))
    graph.add_edges_from(_resolve_pairs(index, covers))

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        path = ' < '.join(labels[u] for u, _ in cycle) + f" < {labels[cycle[0][0]]}"
        raise CycleDetected(f"cycle dans les couvertures: {path}")

    closure = nx.transitive_closure_dag(graph)
    up = tuple(mask_of(closure.successors(i)) | (1 << i) for i in range(len(labels)))
    return Poset(labels, up)


def axiom_verdict(poset: Poset) -> Verdict:
    """Verifie reflexivite, antisymetrie et transitivite element par element."""
    n = poset.n
    for i in range(n):
        if not poset.leq_idx(i, i):
            return Verdict.fail("reflexive", (poset.labels[i],))
    for i in range(n):
        for j in range(i + 1, n):
            if poset.leq_idx(i, j) and poset.leq_idx(j, i):
                return Verdict.fail("antisymmetric", (poset.labels[i], poset.labels[j]))
    for i in range(n):
        for j in iter_bits(poset.up[i]):
            missing = poset.up[j] & ~poset.up[i]
            if missing:
                k = next(iter_bits(missing))
                return Verdict.fail(
                    "transitive", (poset.labels[i], poset.labels[j], poset.labels[k])
                )
    return Verdict.ok()


def from_relation(labels: Iterable[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Accepte la relation telle quelle (aucune cloture) et valide les trois axiomes."""
    labels = _check_labels(labels)
    index = {label: i for i, label in enumerate(labels)}
    up = [0] * len(labels)
    for i, j in _resolve_pairs(index, pairs):
        up[i] |= 1 << j

    poset = Poset(labels, tuple(up))
    verdict = axiom_verdict(poset)
    if not verdict:
        error = {
            'reflexive': NotReflexive,
            'antisymmetric': NotAntisymmetric,
            'transitive': NotTransitive,
        }[verdict.reason]
        raise error(f"relation non {verdict.reason}: ({', '.join(verdict.witness)})")
    return poset


# ============================================================================
# REQUETES
# ============================================================================

def leq(poset: Poset, a: str, b: str) -> bool:
    return poset.leq_idx(poset.index_of(a), poset.index_of(b))


def strict_digraph(poset: Poset) -> nx.DiGraph:
    """Graphe de la relation stricte a < b, noeuds = indices."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(poset.n))
    for i in range(poset.n):
        graph.add_edges_from((i, j) for j in iter_bits(poset.up[i]) if j != i)
    return graph


def covers_of(poset: Poset) -> list[tuple[str, str]]:
    """Reduction transitive: paires (a, b) avec b couvrant a, triees par indices."""
    reduction = nx.transitive_reduction(strict_digraph(poset))
    return [(poset.labels[i], poset.labels[j]) for i, j in sorted(reduction.edges())]


def dual(poset: Poset) -> Poset:
    return Poset(poset.labels, poset.down)


def extremal(poset: Poset, subset: ElementSet, side: Literal['min', 'max']) -> ElementSet:
    """Elements minimaux (side='min') ou maximaux (side='max') du sous-ensemble."""
    if side == 'min':
        return poset.minimal(subset)
    if side == 'max':
        return poset.maximal(subset)
    raise ValueError(f"side doit valoir 'min' ou 'max', pas {side!r}")


class Isomorphism(NamedTuple):
    """Resultat de is_isomorphic; vrai exactement quand `found` l'est."""

    found: bool
    mapping: Optional[dict[str, str]] = None

    def __bool__(self) -> bool:
        return self.found


def is_isomorphic(p: Poset, q: Poset) -> Isomorphism:
    """
    Cherche un isomorphisme d'ordre p -> q.

    Deux ordres sont isomorphes exactement quand les graphes de leurs relations
    strictes le sont; la recherche VF2 est exhaustive.

    Returns:
        Isomorphism(True, bijection label -> label) ou Isomorphism(False, None)
    """
    if p.n != q.n:
        return Isomorphism(False)
    if sum(map(int.bit_count, p.up)) != sum(map(int.bit_count, q.up)):
        return Isomorphism(False)

    matcher = DiGraphMatcher(strict_digraph(p), strict_digraph(q))
    if not matcher.is_isomorphic():
        return Isomorphism(False)
    mapping = {p.labels[i]: q.labels[j] for i, j in sorted(matcher.mapping.items())}
    return Isomorphism(True, mapping)
