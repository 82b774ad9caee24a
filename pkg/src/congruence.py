"""
Congruences des quasi-treillis, condition etoile, quotient et q-homomorphismes.

Une equivalence est une congruence si (a) elle est compatible avec les
operations ensemblistes et (b) chaque ensemble {x}v{y} ou {x}^{y} tient dans
une seule classe.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Literal, Mapping, Optional

from .config import get_limit
from .errors import (
    InvalidMap,
    KernelNotCongruence,
    NotACongruence,
    NotSurjective,
    QuotientNotHomomorphism,
    QuotientNotLattice,
    QuotientNotPoset,
    SizeExceeded,
    StarViolated,
    TargetNotLattice,
)
from .poset import ElementSet, Poset, Verdict, axiom_verdict, iter_bits, mask_of
from .enumeration import all_partitions
from .partition import Partition
from .quasi_ops import Kind, classify, require_quasi_lattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PosetMap:
    """Application totale source -> target, `image[i]` indice dans target."""

    source: Poset
    target: Poset
    image: tuple[int, ...]

    @classmethod
    def from_pairs(cls, source: Poset, target: Poset, pairs: Mapping[str, str]) -> "PosetMap":
        image = []
        for label in source.labels:
            if label not in pairs:
                raise InvalidMap(f"application non totale: {label!r} sans image")
            if pairs[label] not in target.index:
                raise InvalidMap(f"image inconnue: {pairs[label]!r}")
            image.append(target.index[pairs[label]])
        extra = set(pairs) - set(source.labels)
        if extra:
            raise InvalidMap(f"labels hors de la source: {', '.join(sorted(extra))}")
        return cls(source, target, tuple(image))

    def image_of(self, subset: ElementSet) -> ElementSet:
        return mask_of(self.image[i] for i in iter_bits(subset))

    def is_surjective(self) -> bool:
        return mask_of(self.image) == self.target.full


# ============================================================================
# EQUIVALENCE D'ENSEMBLES ET CONGRUENCE
# ============================================================================

def classes_equivalent(poset: Poset, theta: Partition, left: ElementSet, right: ElementSet) -> bool:
    """A = B (mod theta): A et B rencontrent exactement les memes classes."""
    return theta.touched(left) == theta.touched(right)


def _block_tables(poset: Poset, theta: Partition):
    touch = theta.touched
    join = [[touch(m) for m in row] for row in poset.mub_table]
    meet = [[touch(m) for m in row] for row in poset.mlb_table]
    return join, meet


def is_congruence(poset: Poset, theta: Partition) -> Verdict:
    """
    Clause (a): x1=x2, y1=y2 => {x1}^{y1} = {x2}^{y2} et {x1}v{y1} = {x2}v{y2} (mod theta).
    Clause (b): {x}^{y} et {x}v{y} inclus dans une seule classe.
    """
    require_quasi_lattice(poset)
    labels = poset.labels
    n = poset.n
    rep = [next(iter_bits(theta.block(i))) for i in range(n)]
    join, meet = _block_tables(poset, theta)

    # (a) suffit a comparer chaque paire avec les representants de ses classes
    for x2 in range(n):
        x1 = rep[x2]
        for y2 in range(n):
            y1 = rep[y2]
            for reason, table in (('a-meet', meet), ('a-join', join)):
                if table[x1][y1] != table[x2][y2]:
                    witness = (labels[x1], labels[y1], labels[x2], labels[y2])
                    return Verdict.fail(reason, witness)

    for x in range(n):
        for y in range(x, n):
            for reason, table in (('b-meet', meet), ('b-join', join)):
                if table[x][y].bit_count() > 1:
                    return Verdict.fail(reason, (labels[x], labels[y]))
    return Verdict.ok()


# ============================================================================
# CONDITION ETOILE
# ============================================================================

def star_witness(poset: Poset, theta: Partition, x: int, y: int, z: int,
                 side: Literal['join', 'meet'] = 'join') -> Optional[tuple[int, int, int]]:
    """
    Cherche a dans [x], b dans [y], d dans {a}v{b} avec d <= z (side='join'),
    ou d dans {a}^{b} avec d >= z (side='meet'). Essaie (a, b) = (x, y) d'abord.
    """
    if side == 'join':
        table, reach = poset.mub_table, poset.down[z]
    else:
        table, reach = poset.mlb_table, poset.up[z]

    candidates = [(x, y)] + [
        (a, b)
        for a in iter_bits(theta.block(x))
        for b in iter_bits(theta.block(y))
        if (a, b) != (x, y)
    ]
    for a, b in candidates:
        hit = table[a][b] & reach
        if hit:
            return a, b, next(iter_bits(hit))
    return None


def satisfies_star(poset: Poset, theta: Partition) -> Verdict:
    """Clauses (i) et (ii) de la condition etoile pour tout z et toute paire de classes distinctes."""
    require_quasi_lattice(poset)
    labels = poset.labels
    for side, cone in (('join', poset.down), ('meet', poset.up)):
        for z in range(poset.n):
            members = list(iter_bits(cone[z]))
            for pos, x in enumerate(members):
                for y in members[pos + 1:]:
                    if theta.related(x, y):
                        continue
                    if star_witness(poset, theta, x, y, z, side) is None:
                        reason = 'star-i' if side == 'join' else 'star-ii'
                        return Verdict.fail(reason, (labels[x], labels[y], labels[z]))
    return Verdict.ok()


# ============================================================================
# LEMME DES INTERVALLES
# ============================================================================

def interval_verdict(poset: Poset, theta: Partition) -> Verdict:
    """u = v, a dans {u}^{v}, b dans {u}v{v}, a <= x <= b  =>  u = x (mod theta)."""
    labels = poset.labels
    for u in range(poset.n):
        for v in iter_bits(theta.block(u)):
            for a in iter_bits(poset.mlb_table[u][v]):
                for b in iter_bits(poset.mub_table[u][v]):
                    for x in iter_bits(poset.up[a] & poset.down[b]):
                        if not theta.related(u, x):
                            return Verdict.fail(
                                'interval', (labels[u], labels[v], labels[a], labels[b], labels[x])
                            )
    return Verdict.ok()


def check_interval_lemma(poset: Poset, theta: Partition) -> Verdict:
    verdict = is_congruence(poset, theta)
    if not verdict:
        raise NotACongruence(f"hypothese du lemme non satisfaite: {verdict.describe()}")
    return interval_verdict(poset, theta)


# ============================================================================
# QUOTIENT
# ============================================================================

def block_order(poset: Poset, theta: Partition) -> Poset:
    """
    Relation [X] <= [Y] ssi a <= b pour un a de X et un b de Y.

    Aucune verification: le resultat n'est un ordre que sous les hypotheses
    du quotient. Labels: plus petit label (lexicographique) de chaque bloc.
    """
    up = []
    for block in theta.blocks:
        reach = 0
        for a in iter_bits(block):
            reach |= poset.up[a]
        up.append(theta.touched(reach))
    labels = tuple(min(poset.names(block)) for block in theta.blocks)
    return Poset(labels, tuple(up))


def verify_quotient(poset: Poset, theta: Partition) -> tuple[Optional[Poset], Optional["PosetMap"], Verdict]:
    """
    Construit P/theta et verifie ce que le theoreme affirme: ordre partiel,
    treillis, pi q-homomorphisme surjectif, [x]^[y] = [m] pour m dans {x}^{y}
    et [x]v[y] = [j] pour j dans {x}v{y}.
    """
    quotient_poset = block_order(poset, theta)
    axioms = axiom_verdict(quotient_poset)
    if not axioms:
        return quotient_poset, None, Verdict.fail('quotient-order', axioms.witness, axioms.reason)
    classification = classify(quotient_poset)
    if classification.kind is not Kind.LATTICE:
        return quotient_poset, None, Verdict.fail(
            'quotient-lattice', classification.witness or (), classification.kind.value
        )

    projection = PosetMap(poset, quotient_poset, theta.block_of)
    homomorphism = is_q_homomorphism(projection)
    if not homomorphism:
        return quotient_poset, projection, Verdict.fail(
            'quotient-hom', homomorphism.witness, homomorphism.detail
        )

    block_of = theta.block_of
    for x in range(poset.n):
        for y in range(poset.n):
            for reason, source, target in (
                ('quotient-meet', poset.mlb_table, quotient_poset.mlb_table),
                ('quotient-join', poset.mub_table, quotient_poset.mub_table),
            ):
                expected = target[block_of[x]][block_of[y]]
                for m in iter_bits(source[x][y]):
                    if 1 << block_of[m] != expected:
                        labels = poset.labels
                        return quotient_poset, projection, Verdict.fail(
                            reason, (labels[x], labels[y], labels[m])
                        )
    return quotient_poset, projection, Verdict.ok()


def quotient(poset: Poset, theta: Partition) -> tuple[Poset, PosetMap]:
    """
    Quotient P/theta et projection pi: x -> [x].

    Raises:
        NotACongruence, StarViolated: hypotheses non satisfaites
        QuotientNotPoset, QuotientNotLattice, QuotientNotHomomorphism:
            contre-exemple au theoreme (ne doit pas arriver)
    """
    congruence = is_congruence(poset, theta)
    if not congruence:
        raise NotACongruence(f"pas une congruence: {congruence.describe()}")
    star = satisfies_star(poset, theta)
    if not star:
        raise StarViolated(f"condition etoile violee: {star.describe()}")

    quotient_poset, projection, verdict = verify_quotient(poset, theta)
    if not verdict:
        error = {
            'quotient-order': QuotientNotPoset,
            'quotient-lattice': QuotientNotLattice,
        }.get(verdict.reason, QuotientNotHomomorphism)
        logger.warning(f"Contre-exemple au quotient: {verdict.describe()}")
        raise error("quotient incoherent", verdict)
    return quotient_poset, projection


# ============================================================================
# HOMOMORPHISMES
# ============================================================================

def is_q_homomorphism(mapping: PosetMap) -> Verdict:
    """T({x}v{y}) = {T(x)}v{T(y)} et T({x}^{y}) = {T(x)}^{T(y)} pour toutes les paires."""
    source, target, image = mapping.source, mapping.target, mapping.image
    labels = source.labels

    for x in range(source.n):
        for y in range(x, source.n):
            tx, ty = image[x], image[y]
            for reason, s_table, t_table in (
                ('join', source.mub_table, target.mub_table),
                ('meet', source.mlb_table, target.mlb_table),
            ):
                left = mapping.image_of(s_table[x][y])
                right = t_table[tx][ty]
                if left != right:
                    detail = (f"{{{', '.join(target.names(left))}}} != "
                              f"{{{', '.join(target.names(right))}}}")
                    return Verdict.fail(reason, (labels[x], labels[y]), detail)
    return Verdict.ok()


def kernel_partition(mapping: PosetMap) -> Partition:
    """
    Partition {T^-1(a) : a dans la cible}.

    Si T est un q-homomorphisme, verifie que le noyau est une congruence
    satisfaisant la condition etoile.
    """
    if not mapping.is_surjective():
        missing = mapping.target.names(mapping.target.full & ~mask_of(mapping.image))
        raise NotSurjective(f"application non surjective, sans antecedent: {', '.join(missing)}")
    if classify(mapping.target).kind is not Kind.LATTICE:
        raise TargetNotLattice("la cible n'est pas un treillis")

    fibers = [0] * mapping.target.n
    for i, t in enumerate(mapping.image):
        fibers[t] |= 1 << i
    theta = Partition.from_blocks(mapping.source.n, fibers)

    if is_q_homomorphism(mapping):
        for check in (is_congruence, satisfies_star):
            verdict = check(mapping.source, theta)
            if not verdict:
                logger.warning(f"Contre-exemple au noyau: {verdict.describe()}")
                raise KernelNotCongruence("noyau d'un q-homomorphisme", verdict)
    return theta


# ============================================================================
# ENUMERATION
# ============================================================================

def all_congruences(poset: Poset) -> list[Partition]:
    limit = get_limit('congruence_limit')
    if poset.n > limit:
        raise SizeExceeded(f"{poset.n} elements, enumeration des congruences limitee a {limit}")
    return [theta for theta in all_partitions(poset.n) if is_congruence(poset, theta)]


def all_maps(source: Poset, target: Poset) -> Iterator[PosetMap]:
    """Les target.n ** source.n applications, ordre lexicographique des images."""
    for image in product(range(target.n), repeat=source.n):
        yield PosetMap(source, target, image)
