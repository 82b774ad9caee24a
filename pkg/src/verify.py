"""
Balayage exhaustif des theoremes sur tous les posets etiquetes de petite taille.

Chaque affirmation du registre (CLAIMS) est verifiee sur chaque poset a n
elements, n <= borne de l'affirmation. L'espace est decoupe par poset parent
(les n-1 premiers elements): un parent = une tache independante, les resultats
partiels sont fusionnes puis tries, donc le rapport ne depend pas du nombre de
workers.
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import cache, cached_property
from itertools import combinations, combinations_with_replacement
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn

from .config import get_config, get_limit
from .congruence import (
    all_congruences,
    all_maps,
    interval_verdict,
    is_congruence,
    is_q_homomorphism,
    kernel_partition,
    satisfies_star,
    verify_quotient,
)
from .enumeration import all_partitions, all_posets, extensions
from .errors import KernelNotCongruence, SizeExceeded, UnknownClaim
from .ideals import (
    StructureKind,
    all_structures,
    check_structure_lattice,
    is_closed_structure,
    is_convex,
    is_sub_quasi_lattice,
    structure_label,
)
from .partition import Partition
from .poset import Poset, Verdict, covers_of, is_isomorphic
from .poset_file import format_poset_file
from .quasi_ops import Kind, Classification, check_identities, classify, is_associative, is_modular

logger = logging.getLogger(__name__)

KERNEL_TARGET_LIMIT = 4


class Check(NamedTuple):
    """Une verification elementaire: contexte (partition, application...) et verdict."""

    context: str
    verdict: Verdict


class Case:
    """Un poset du balayage et ses donnees derivees, calculees a la demande."""

    def __init__(self, poset: Poset):
        self.poset = poset

    @cached_property
    def classification(self) -> Classification:
        return classify(self.poset)

    @property
    def kind(self) -> Kind:
        return self.classification.kind

    @property
    def quasi(self) -> bool:
        return self.kind is not Kind.NOT_QUASI_LATTICE

    @cached_property
    def congruences(self) -> list[Partition]:
        return all_congruences(self.poset)

    @cached_property
    def ideals(self) -> list[int]:
        return all_structures(self.poset, StructureKind.IDEAL)

    @cached_property
    def filters(self) -> list[int]:
        return all_structures(self.poset, StructureKind.FILTER)


# ============================================================================
# AFFIRMATIONS
# ============================================================================

def _iff(reason: str, left: Verdict, expected: bool, fallback) -> Verdict:
    """Echec si left.holds != expected; temoin: celui de left, sinon fallback."""
    if left.holds == expected:
        return Verdict.ok()
    return Verdict.fail(reason, left.witness or fallback or (), left.detail)


def _check_identities(case: Case) -> Iterator[Check]:
    if case.quasi:
        yield Check('', check_identities(case.poset))


def _check_associativity(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    lattice = case.kind is Kind.LATTICE
    reason = 'lattice-not-associative' if lattice else 'associative-not-lattice'
    yield Check('', _iff(reason, is_associative(case.poset), lattice, case.classification.witness))


def _check_modularity(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    modular = is_modular(case.poset)
    if modular and case.kind is not Kind.LATTICE:
        yield Check('', Verdict.fail('modular-not-lattice', case.classification.witness))
    else:
        yield Check('', Verdict.ok())


def _check_structure_lattices(case: Case) -> Iterator[Check]:
    for kind in StructureKind:
        _, verdict = check_structure_lattice(case.poset, kind)
        yield Check(kind.value, verdict)


def _closed(case: Case, subset: int, kind: StructureKind, context: str) -> Check:
    verdict = is_closed_structure(case.poset, subset, kind)
    return Check(f"{context} = {structure_label(case.poset, subset)}", verdict)


def _check_intersections(case: Case) -> Iterator[Check]:
    poset = case.poset
    for kind, family in ((StructureKind.IDEAL, case.ideals), (StructureKind.FILTER, case.filters)):
        for s, t in combinations(family, 2):
            yield _closed(case, s & t, kind, f"{kind.value} pair intersection")
        for s, t, u in combinations(family, 3):
            yield _closed(case, s & t & u, kind, f"{kind.value} triple intersection")

    for f in case.filters:
        for i in case.ideals:
            context = f"filter {structure_label(poset, f)} & ideal {structure_label(poset, i)}"
            yield Check(context, is_sub_quasi_lattice(poset, f & i))
            yield Check(context, is_convex(poset, f & i))


def _check_interval_lemma(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    poset = case.poset
    for theta in case.congruences:
        context = f"partition {theta.format(poset)}"
        yield Check(context, interval_verdict(poset, theta))
        for block in theta.blocks:
            yield Check(context, is_convex(poset, block))


def _check_quotient(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    poset = case.poset
    for theta in case.congruences:
        context = f"partition {theta.format(poset)}"
        star = satisfies_star(poset, theta)
        if not star:
            yield Check(context, star)
            continue
        _, _, verdict = verify_quotient(poset, theta)
        yield Check(context, verdict)


@cache
def lattice_representatives(m: int) -> tuple[Poset, ...]:
    """Un treillis par classe d'isomorphie parmi les posets etiquetes a m elements."""
    representatives = []
    for poset in all_posets(m):
        if classify(poset).kind is not Kind.LATTICE:
            continue
        if not any(is_isomorphic(poset, r) for r in representatives):
            representatives.append(poset)
    return tuple(representatives)


def _check_kernel(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    source = case.poset
    for m in range(1, min(source.n, KERNEL_TARGET_LIMIT) + 1):
        for target in lattice_representatives(m):
            for mapping in all_maps(source, target):
                if not mapping.is_surjective() or not is_q_homomorphism(mapping):
                    continue
                context = "map " + ",".join(
                    f"{label}:{target.labels[t]}" for label, t in zip(source.labels, mapping.image)
                )
                try:
                    kernel_partition(mapping)
                except KernelNotCongruence as e:
                    yield Check(context, e.verdict)
                else:
                    yield Check(context, Verdict.ok())


def _check_star(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    poset = case.poset
    for theta in all_partitions(poset.n):
        yield Check(f"partition {theta.format(poset)}", satisfies_star(poset, theta))


def _check_identity_congruence(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    identity = Partition.identity(case.poset.n)
    lattice = case.kind is Kind.LATTICE
    reason = 'lattice-identity-not-congruence' if lattice else 'identity-congruence-not-lattice'
    verdict = is_congruence(case.poset, identity)
    yield Check('identity', _iff(reason, verdict, lattice, case.classification.witness))


def _check_partition_lattice(case: Case) -> Iterator[Check]:
    if not case.quasi:
        return
    poset = case.poset
    for theta, phi in combinations_with_replacement(case.congruences, 2):
        pair = f"{theta.format(poset)} and {phi.format(poset)}"
        yield Check(f"meet of {pair}", is_congruence(poset, theta.meet(phi)))
        yield Check(f"join of {pair}", is_congruence(poset, theta.join(phi)))


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    default_n: int
    max_n: int
    check: Callable[[Case], Iterator[Check]]


CLAIMS: tuple[Claim, ...] = (
    Claim('identities', "idempotence, commutativity and absorption hold set-wise on every quasi-lattice",
          5, 6, _check_identities),
    Claim('associativity', "a quasi-lattice is associative iff it is a lattice",
          5, 6, _check_associativity),
    Claim('modularity', "a modular quasi-lattice is a lattice",
          5, 6, _check_modularity),
    Claim('structure_lattices', "ideals and filters form lattices (intersection, closure of union)",
          5, 6, _check_structure_lattices),
    Claim('intersections', "intersections of ideals (filters) are ideals (filters); "
          "filter & ideal is a convex sub-quasi-lattice", 4, 5, _check_intersections),
    Claim('interval_lemma', "interval lemma holds for every congruence; blocks are convex",
          4, 5, _check_interval_lemma),
    Claim('quotient', "congruence + star condition gives a lattice quotient and a q-homomorphism projection",
          4, 5, _check_quotient),
    Claim('kernel', "kernel of a surjective q-homomorphism onto a lattice is a congruence with the star condition",
          4, 4, _check_kernel),
    Claim('star', "the star condition holds for every partition of every quasi-lattice",
          5, 5, _check_star),
    Claim('identity_congruence', "identity partition is a congruence iff lattice",
          5, 6, _check_identity_congruence),
    Claim('partition_lattice', "meet and join of two congruences are congruences",
          4, 5, _check_partition_lattice),
)

CLAIMS_BY_ID = {claim.id: claim for claim in CLAIMS}


def resolve_claims(ids: Optional[Iterable[str]]) -> tuple[Claim, ...]:
    """Affirmations demandees, dans l'ordre du registre; None = toutes."""
    if ids is None:
        return CLAIMS
    ids = set(ids)
    unknown = sorted(ids - set(CLAIMS_BY_ID))
    if unknown:
        raise UnknownClaim(
            f"affirmation inconnue: {', '.join(unknown)} (connues: {', '.join(CLAIMS_BY_ID)})"
        )
    return tuple(claim for claim in CLAIMS if claim.id in ids)


# ============================================================================
# RAPPORT
# ============================================================================

@dataclass(frozen=True)
class Counterexample:
    claim: str
    poset: Poset
    context: str
    verdict: Verdict

    def sort_key(self):
        return (self.claim, self.poset.n, self.poset.up, self.context,
                self.verdict.reason or '', self.verdict.witness or ())


@dataclass
class SweepReport:
    """
    Resultat d'un balayage.

    `bounds[claim]` est le n maximal balaye pour l'affirmation,
    `instances[n][kind]` le nombre de posets a n elements par type,
    `checks[claim]` le nombre de verifications elementaires executees.
    """

    n_max: int
    claims: tuple[str, ...]
    bounds: dict[str, int]
    instances: dict[int, dict[str, int]] = field(default_factory=dict)
    checks: dict[str, int] = field(default_factory=dict)
    counterexamples: list[Counterexample] = field(default_factory=list)
    fixture_paths: list[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def posets_examined(self, n: int) -> int:
        return sum(self.instances.get(n, {}).values())


class _ShardResult(NamedTuple):
    n: int
    kinds: Counter
    checks: Counter
    counterexamples: list[Counterexample]


def _run_shard(n: int, parent: Optional[Poset], claim_ids: tuple[str, ...]) -> _ShardResult:
    """Verifie toutes les extensions d'un parent (n = 1: le poset singleton)."""
    claims = [CLAIMS_BY_ID[claim_id] for claim_id in claim_ids]
    posets = all_posets(1) if parent is None else extensions(parent)
    kinds: Counter = Counter()
    checks: Counter = Counter()
    found = []

    for poset in posets:
        case = Case(poset)
        kinds[case.kind.value] += 1
        for claim in claims:
            for check in claim.check(case):
                checks[claim.id] += 1
                if not check.verdict:
                    logger.warning(
                        f"Contre-exemple [{claim.id}] n={n} {check.context}: {check.verdict.describe()}"
                    )
                    found.append(Counterexample(claim.id, poset, check.context, check.verdict))
    return _ShardResult(n, kinds, checks, found)


def _claim_bounds(selected: tuple[Claim, ...], n_max: Optional[int], explicit: bool) -> dict[str, int]:
    bounds = {}
    for claim in selected:
        if n_max is None:
            bounds[claim.id] = claim.default_n
        elif n_max > claim.max_n:
            if explicit:
                raise SizeExceeded(f"{claim.id}: n={n_max} au-dela de la borne {claim.max_n}")
            logger.info(f"{claim.id}: balayage limite a n={claim.max_n}")
            bounds[claim.id] = claim.max_n
        else:
            bounds[claim.id] = n_max
    return bounds


def _write_fixtures(report: SweepReport, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    per_claim: Counter = Counter()
    for counterexample in report.counterexamples:
        per_claim[counterexample.claim] += 1
        name = f"{counterexample.claim}_{per_claim[counterexample.claim]:03d}"
        comments = [
            f"claim: {counterexample.claim}",
            f"context: {counterexample.context or '-'}",
            f"witness: {counterexample.verdict.describe()}",
        ]
        path = out_dir / f"{name}.qlat"
        path.write_text(format_poset_file(counterexample.poset, name, comments), encoding='utf-8')
        report.fixture_paths.append(path)
        logger.info(f"Contre-exemple ecrit: {path}")


def verify_theorems(n_max: Optional[int] = None,
                    claims: Optional[Iterable[str]] = None,
                    jobs: Optional[int] = None,
                    out_dir: Optional[Path] = None,
                    show_progress: Optional[bool] = None) -> SweepReport:
    """
    Balaye les affirmations sur tous les posets etiquetes jusqu'a n_max.

    Args:
        n_max: Taille maximale; None = borne par defaut de chaque affirmation
        claims: Identifiants du registre; None = toutes (plafonnees a leur max)
        jobs: Nombre de processus (defaut: sweep.jobs)
        out_dir: Repertoire des fixtures de contre-exemples; None = aucune ecriture
        show_progress: Barre rich sur stderr (defaut: si stderr est un terminal)

    Raises:
        UnknownClaim, SizeExceeded
    """
    selected = resolve_claims(claims)
    if n_max is not None and n_max < 1:
        raise SizeExceeded(f"n_max={n_max} doit etre >= 1")
    bounds = _claim_bounds(selected, n_max, explicit=claims is not None)
    top = max(bounds.values())
    poset_limit = get_limit('poset_limit')
    if top > poset_limit:
        raise SizeExceeded(f"n={top} au-dela de enumeration.poset_limit={poset_limit}")
    jobs = max(1, int(jobs if jobs is not None else get_config()['sweep']['jobs']))

    tasks = []
    for n in range(1, top + 1):
        active = tuple(claim.id for claim in selected if bounds[claim.id] >= n)
        if n == 1:
            tasks.append((1, None, active))
        else:
            tasks.extend((n, parent, active) for parent in all_posets(n - 1))
    logger.info(f"Balayage n<={top}, {len(selected)} affirmations, {len(tasks)} taches, {jobs} worker(s)")

    report = SweepReport(n_max=top, claims=tuple(c.id for c in selected), bounds=bounds)
    kinds = {n: Counter() for n in range(1, top + 1)}
    checks: Counter = Counter()

    console = Console(stderr=True)
    if show_progress is None:
        show_progress = console.is_terminal
    with Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        console=console,
        disable=not show_progress,
    ) as progress:
        bar = progress.add_task("Balayage...", total=len(tasks))

        def collect(result: _ShardResult):
            kinds[result.n].update(result.kinds)
            checks.update(result.checks)
            report.counterexamples.extend(result.counterexamples)
            progress.advance(bar)

        if jobs == 1:
            for task in tasks:
                collect(_run_shard(*task))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = [executor.submit(_run_shard, *task) for task in tasks]
                for future in as_completed(futures):
                    collect(future.result())

    report.instances = {
        n: {kind.value: counts.get(kind.value, 0) for kind in Kind} for n, counts in kinds.items()
    }
    report.checks = {claim.id: checks.get(claim.id, 0) for claim in selected}
    report.counterexamples.sort(key=Counterexample.sort_key)

    if out_dir is not None and report.counterexamples:
        _write_fixtures(report, Path(out_dir))

    logger.info(f"Balayage termine: {sum(report.checks.values())} verifications, "
                f"{len(report.counterexamples)} contre-exemple(s)")
    return report


def _describe_poset(poset: Poset) -> str:
    covers = " ".join(f"{low}<{high}" for low, high in covers_of(poset))
    return f"{{{' '.join(poset.labels)}}} {covers}".rstrip()


def format_report(report: SweepReport) -> str:
    """Rapport texte deterministe (independant du nombre de workers)."""
    lines = [f"sweep n_max={report.n_max}", f"claims: {', '.join(report.claims)}"]
    for n in sorted(report.instances):
        counts = report.instances[n]
        detail = ", ".join(f"{kind.value} {counts[kind.value]}" for kind in Kind)
        lines.append(f"n={n}: {report.posets_examined(n)} posets ({detail})")
    lines.append("checks:")
    for claim_id in report.claims:
        lines.append(f"  {claim_id}: {report.checks[claim_id]} (n<={report.bounds[claim_id]})")
    lines.append(f"counterexamples: {len(report.counterexamples)}")
    for counterexample in report.counterexamples:
        context = f" {counterexample.context}" if counterexample.context else ""
        lines.append(
            f"  [{counterexample.claim}] {_describe_poset(counterexample.poset)}"
            f"{context}: {counterexample.verdict.describe()}"
        )
    return "\n".join(lines) + "\n"
