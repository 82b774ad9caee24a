"""Partitions d'un ensemble fini (relations d'equivalence), forme canonique par blocs."""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .errors import InvalidPartition
from .poset import ElementSet, Poset, iter_bits, mask_of


@dataclass(frozen=True)
class Partition:
    """
    Blocs disjoints non vides couvrant {0..n-1}, ordonnes par plus petit membre.

    `block_of[i]` est l'indice du bloc contenant i. Construire via les
    fabriques, qui canonisent.
    """

    n: int
    blocks: tuple[ElementSet, ...]

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        block_of = [0] * self.n
        for b, block in enumerate(self.blocks):
            for i in iter_bits(block):
                block_of[i] = b
        return tuple(block_of)

    def __len__(self) -> int:
        return len(self.blocks)

    def block(self, i: int) -> ElementSet:
        return self.blocks[self.block_of[i]]

    def related(self, i: int, j: int) -> bool:
        return self.block_of[i] == self.block_of[j]

    def touched(self, subset: ElementSet) -> int:
        """Masque des indices de blocs rencontres par le sous-ensemble."""
        block_of = self.block_of
        mask = 0
        for i in iter_bits(subset):
            mask |= 1 << block_of[i]
        return mask

    def rgs(self) -> tuple[int, ...]:
        """Chaine a croissance restreinte equivalente."""
        return self.block_of

    # ------------------------------------------------------------------------
    # Fabriques
    # ------------------------------------------------------------------------

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[ElementSet]) -> "Partition":
        blocks = [b for b in blocks]
        seen = 0
        for block in blocks:
            if not block:
                raise InvalidPartition("bloc vide")
            if block & seen:
                raise InvalidPartition("blocs non disjoints")
            seen |= block
        if seen != (1 << n) - 1:
            raise InvalidPartition("les blocs ne couvrent pas tous les elements")
        ordered = sorted(blocks, key=lambda b: b & -b)
        return cls(n, tuple(ordered))

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "Partition":
        blocks: dict[int, int] = {}
        for i, b in enumerate(rgs):
            blocks[b] = blocks.get(b, 0) | 1 << i
        return cls.from_blocks(len(rgs), blocks.values())

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def single_block(cls, n: int) -> "Partition":
        return cls(n, ((1 << n) - 1,))

    @classmethod
    def parse(cls, poset: Poset, text: str) -> "Partition":
        """Syntaxe `0,m|1`: '|' entre blocs, ',' dans un bloc; partition totale."""
        blocks = []
        seen = set()
        for chunk in text.split('|'):
            labels = [label.strip() for label in chunk.split(',')]
            if not all(labels):
                raise InvalidPartition(f"bloc vide ou label vide dans {text!r}")
            for label in labels:
                if label not in poset.index:
                    raise InvalidPartition(f"label inconnu dans la partition: {label!r}")
                if label in seen:
                    raise InvalidPartition(f"label repete dans la partition: {label!r}")
                seen.add(label)
            blocks.append(mask_of(poset.index[label] for label in labels))
        missing = [label for label in poset.labels if label not in seen]
        if missing:
            raise InvalidPartition(f"elements absents de la partition: {', '.join(missing)}")
        return cls.from_blocks(poset.n, blocks)

    def format(self, poset: Poset) -> str:
        return '|'.join(','.join(poset.names(block)) for block in self.blocks)

    # ------------------------------------------------------------------------
    # Treillis des partitions
    # ------------------------------------------------------------------------

    def refines(self, other: "Partition") -> bool:
        """Chaque bloc de self est inclus dans un bloc de other."""
        return all(other.block(next(iter_bits(b))) & b == b for b in self.blocks)

    def meet(self, other: "Partition") -> "Partition":
        """Raffinement commun: intersections non vides des blocs."""
        blocks = [a & b for a in self.blocks for b in other.blocks if a & b]
        return Partition.from_blocks(self.n, blocks)

    def join(self, other: "Partition") -> "Partition":
        """Cloture transitive de l'union des deux equivalences."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for block in self.blocks + other.blocks:
            members = list(iter_bits(block))
            graph.add_edges_from(zip(members, members[1:]))
        return Partition.from_blocks(self.n, (mask_of(c) for c in nx.connected_components(graph)))


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Toutes les chaines a croissance restreinte de longueur n, ordre lexicographique."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def backtrack(i: int, top: int):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from backtrack(i + 1, max(top, b))

    rgs[0] = 0
    yield from backtrack(1, 0)
