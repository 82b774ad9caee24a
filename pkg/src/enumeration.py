"""
Enumeration exhaustive des posets etiquetes et des partitions.

Les posets sur {e1..en} sont engendres par insertion d'elements: chaque poset
a n elements est l'unique extension de sa restriction aux n-1 premiers
elements. La force brute sur matrices booleennes sert d'oracle independant.
"""

import logging
from itertools import product
from math import comb
from typing import Iterator, Literal

import numpy as np

from .config import get_limit
from .errors import SizeExceeded
from .ideals import StructureKind, closed_sets, subset_key
from .poset import Poset, axiom_verdict, iter_bits
from .partition import Partition, restricted_growth_strings

logger = logging.getLogger(__name__)

ORACLE_LIMIT = 4
PAIRS_LIMIT = 5


def element_labels(n: int) -> tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


def _check_size(n: int, limit: int, what: str):
    if not 1 <= n <= limit:
        raise SizeExceeded(f"{what}: n={n} hors de 1..{limit}")


def extensions(parent: Poset) -> Iterator[Poset]:
    """
    Toutes les facons d'ajouter un element e au-dessus d'un ensemble clos vers
    le bas D et au-dessous d'un ensemble clos vers le haut U, avec D <= U.
    """
    k = parent.n
    labels = parent.labels + (f"e{k + 1}",)
    new = 1 << k
    downsets = sorted(closed_sets(parent, StructureKind.IDEAL), key=subset_key)
    upsets = sorted(closed_sets(parent, StructureKind.FILTER), key=subset_key)

    for below in downsets:
        for above in upsets:
            if below & above:
                continue
            if any(parent.down[u] & below != below for u in iter_bits(above)):
                continue
            up = tuple(
                ups | new if below >> i & 1 else ups
                for i, ups in enumerate(parent.up)
            ) + (new | above,)
            yield Poset(labels, up)


def _posets_by_extension(n: int) -> Iterator[Poset]:
    if n == 1:
        yield Poset(element_labels(1), (1,))
        return
    for parent in _posets_by_extension(n - 1):
        yield from extensions(parent)


def _posets_by_pairs(n: int) -> Iterator[Poset]:
    """Chaque paire i < j: incomparables, i < j ou j < i; on garde les ordres."""
    _check_size(n, PAIRS_LIMIT, "enumeration par paires")
    labels = element_labels(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choices in product((0, 1, 2), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), choice in zip(pairs, choices):
            if choice == 1:
                up[i] |= 1 << j
            elif choice == 2:
                up[j] |= 1 << i
        poset = Poset(labels, tuple(up))
        if axiom_verdict(poset):
            yield poset


def all_posets(n: int, order: Literal['extend', 'pairs'] = 'extend') -> Iterator[Poset]:
    """Tous les posets etiquetes sur {e1..en}, chacun exactement une fois."""
    _check_size(n, get_limit('poset_limit'), "all_posets")
    if order == 'extend':
        yield from _posets_by_extension(n)
    elif order == 'pairs':
        yield from _posets_by_pairs(n)
    else:
        raise ValueError(f"ordre de generation inconnu: {order!r}")


def matrix_oracle(n: int) -> set[tuple[int, ...]]:
    """
    Force brute: les 2^(n*n) matrices booleennes filtrees par les trois axiomes.

    Returns:
        Ensemble des relations, codees comme Poset.up
    """
    _check_size(n, ORACLE_LIMIT, "oracle matriciel")
    cells = n * n
    codes = np.arange(1 << cells, dtype=np.int64)
    matrices = ((codes[:, None] >> np.arange(cells)) & 1).astype(bool).reshape(-1, n, n)

    diagonal = np.eye(n, dtype=bool)
    reflexive = matrices[:, diagonal].all(axis=1)
    antisymmetric = ~(matrices & matrices.transpose(0, 2, 1) & ~diagonal).any(axis=(1, 2))
    as_int = matrices.astype(np.uint8)
    composed = np.matmul(as_int, as_int) > 0
    transitive = ~(composed & ~matrices).any(axis=(1, 2))

    kept = matrices[reflexive & antisymmetric & transitive]
    weights = 1 << np.arange(n, dtype=np.int64)
    rows = (kept.astype(np.int64) * weights).sum(axis=2)
    logger.debug(f"Oracle n={n}: {len(rows)} relations sur {1 << cells} matrices")
    return {tuple(int(v) for v in row) for row in rows}


def all_partitions(n: int) -> Iterator[Partition]:
    """Toutes les partitions de {0..n-1}, ordre canonique (croissance restreinte)."""
    _check_size(n, get_limit('partition_limit'), "all_partitions")
    for rgs in restricted_growth_strings(n):
        yield Partition.from_rgs(rgs)


def bell_number(n: int) -> int:
    """B(n) par la recurrence B(n) = somme C(n-1, k) B(k)."""
    bell = [1]
    for m in range(1, n + 1):
        bell.append(sum(comb(m - 1, k) * bell[k] for k in range(m)))
    return bell[n]
