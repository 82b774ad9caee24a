"""
Operations ensemblistes de jointure/rencontre et classification des quasi-treillis.

{a} v {b} est l'ensemble des bornes superieures minimales de a et b, {a} ^ {b}
celui des bornes inferieures maximales. Les operations sont relevees aux
sous-ensembles par union sur toutes les paires.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import NotAQuasiLattice
from .poset import ElementSet, Poset, Verdict, bit, iter_bits

logger = logging.getLogger(__name__)


class Kind(str, Enum):
    NOT_QUASI_LATTICE = "not-quasi-lattice"
    QUASI_LATTICE = "quasi-lattice"
    LATTICE = "lattice"


@dataclass(frozen=True)
class Classification:
    """
    Type d'un poset avec son temoin.

    - NOT_QUASI_LATTICE: paire dont le mub ou le mlb est vide
    - QUASI_LATTICE: paire dont le mub ou le mlb a au moins deux elements
    - LATTICE: pas de temoin
    """

    kind: Kind
    witness: Optional[tuple[str, str]] = None
    side: Optional[str] = None  # 'mub' ou 'mlb'


# ============================================================================
# BORNES
# ============================================================================

def mub(poset: Poset, a: str, b: str) -> ElementSet:
    """Bornes superieures minimales de {a, b} (antichaine, vide si aucune borne)."""
    return poset.mub_table[poset.index_of(a)][poset.index_of(b)]


def mlb(poset: Poset, a: str, b: str) -> ElementSet:
    """Bornes inferieures maximales de {a, b}."""
    return poset.mlb_table[poset.index_of(a)][poset.index_of(b)]


def _lift(table, left: ElementSet, right: ElementSet) -> ElementSet:
    result = 0
    for a in iter_bits(left):
        row = table[a]
        for b in iter_bits(right):
            result |= row[b]
    return result


def set_join(poset: Poset, left: ElementSet, right: ElementSet) -> ElementSet:
    """A v B: union des mub(a, b) pour a dans A, b dans B."""
    return _lift(poset.mub_table, left, right)


def set_meet(poset: Poset, left: ElementSet, right: ElementSet) -> ElementSet:
    """A ^ B: union des mlb(a, b) pour a dans A, b dans B."""
    return _lift(poset.mlb_table, left, right)


# ============================================================================
# CLASSIFICATION
# ============================================================================

def classify(poset: Poset) -> Classification:
    """Premier temoin dans l'ordre lexicographique des indices."""
    n = poset.n
    labels = poset.labels
    multiple = None

    for i in range(n):
        mub_row = poset.mub_table[i]
        mlb_row = poset.mlb_table[i]
        for j in range(i + 1, n):
            for side, found in (('mub', mub_row[j]), ('mlb', mlb_row[j])):
                if not found:
                    return Classification(Kind.NOT_QUASI_LATTICE, (labels[i], labels[j]), side)
                if multiple is None and found & (found - 1):
                    multiple = ((labels[i], labels[j]), side)

    if multiple is not None:
        return Classification(Kind.QUASI_LATTICE, *multiple)
    return Classification(Kind.LATTICE)


def is_quasi_lattice(poset: Poset) -> bool:
    return classify(poset).kind is not Kind.NOT_QUASI_LATTICE


def is_lattice(poset: Poset) -> bool:
    return classify(poset).kind is Kind.LATTICE


def require_quasi_lattice(poset: Poset):
    classification = classify(poset)
    if classification.kind is Kind.NOT_QUASI_LATTICE:
        a, b = classification.witness
        raise NotAQuasiLattice(
            f"pas un quasi-treillis: {classification.side}({a}, {b}) est vide"
        )


# ============================================================================
# IDENTITES ET PROPRIETES
# ============================================================================

def _sides(poset: Poset, left: ElementSet, right: ElementSet) -> str:
    return f"{{{', '.join(poset.names(left))}}} != {{{', '.join(poset.names(right))}}}"


def check_identities(poset: Poset) -> Verdict:
    """
    Idempotence, commutativite et absorption sous forme ensembliste, pour toutes les paires (a, b).

    {a}v{a}={a}, {a}^{b}={b}^{a}, {a}v({a}^{b})={a}=({a}^{b})v{a} et les duales.
    """
    require_quasi_lattice(poset)
    mub_table, mlb_table = poset.mub_table, poset.mlb_table

    for a in range(poset.n):
        single = bit(a)
        for b in range(poset.n):
            meet_ab = mlb_table[a][b]
            join_ab = mub_table[a][b]
            checks = (
                ('idempotent-join', mub_table[a][a], single),
                ('idempotent-meet', mlb_table[a][a], single),
                ('commutative-join', join_ab, mub_table[b][a]),
                ('commutative-meet', meet_ab, mlb_table[b][a]),
                ('absorption-join', set_join(poset, single, meet_ab), single),
                ('absorption-join', set_join(poset, meet_ab, single), single),
                ('absorption-meet', set_meet(poset, single, join_ab), single),
                ('absorption-meet', set_meet(poset, join_ab, single), single),
            )
            for name, left, right in checks:
                if left != right:
                    return Verdict.fail(
                        name, (poset.labels[a], poset.labels[b]), _sides(poset, left, right)
                    )
    return Verdict.ok()


def is_associative(poset: Poset) -> Verdict:
    """{a}v({b}v{c}) = ({a}v{b})v{c} et l'egalite duale, pour tous les triplets."""
    require_quasi_lattice(poset)
    n = poset.n
    mub_table, mlb_table = poset.mub_table, poset.mlb_table

    for a in range(n):
        for b in range(n):
            for c in range(n):
                for reason, table in (('join', mub_table), ('meet', mlb_table)):
                    left = _lift(table, bit(a), table[b][c])
                    right = _lift(table, table[a][b], bit(c))
                    if left != right:
                        witness = (poset.labels[a], poset.labels[b], poset.labels[c])
                        return Verdict.fail(reason, witness, _sides(poset, left, right))
    return Verdict.ok()


def is_modular(poset: Poset) -> Verdict:
    """{x}v({y}^{z}) = ({x}v{y})^{z} pour tous x <= z."""
    require_quasi_lattice(poset)
    n = poset.n

    for x in range(n):
        for y in range(n):
            for z in iter_bits(poset.up[x]):
                left = set_join(poset, bit(x), poset.mlb_table[y][z])
                right = set_meet(poset, poset.mub_table[x][y], bit(z))
                if left != right:
                    witness = (poset.labels[x], poset.labels[y], poset.labels[z])
                    return Verdict.fail('modular', witness, _sides(poset, left, right))
    return Verdict.ok()
