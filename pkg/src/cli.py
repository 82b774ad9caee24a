"""
CLI qlat - quasi-treillis, ideaux, congruences et balayage des theoremes.

Codes de sortie: 0 succes, 1 propriete violee (temoin imprime), 2 erreur
d'usage ou de lecture. FILE peut etre `fixture:NAME`.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from .config import get_config
from .congruence import (
    PosetMap,
    all_congruences,
    is_congruence,
    is_q_homomorphism,
    kernel_partition,
    quotient,
    satisfies_star,
)
from .dot_export import emit_dot
from .errors import InputError, InvalidMap, PreconditionError, TheoremCounterexample
from .ideals import StructureKind, all_structures, closure, is_closed_structure, structure_label
from .partition import Partition
from .poset import Poset, is_isomorphic
from .poset_file import format_poset_file, load_document, load_poset
from .quasi_ops import Kind, check_identities, classify, is_associative, is_modular, mlb, mub
from .verify import format_report, verify_theorems

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"

PROPERTIES = {
    'associative': is_associative,
    'modular': is_modular,
    'identities': check_identities,
}


def _labels_arg(poset: Poset, text: str) -> int:
    """Liste `a,b,c` (vide = ensemble vide) vers masque."""
    labels = [label.strip() for label in text.split(',') if label.strip()]
    return poset.mask(*labels)


def _map_arg(source: Poset, target: Poset, text: str) -> PosetMap:
    pairs = {}
    for item in text.split(','):
        left, sep, right = item.partition(':')
        if not sep or not left.strip() or not right.strip():
            raise InvalidMap(f"couple mal forme dans --map: {item!r} (attendu x:y)")
        if left.strip() in pairs:
            raise InvalidMap(f"label repete dans --map: {left.strip()!r}")
        pairs[left.strip()] = right.strip()
    return PosetMap.from_pairs(source, target, pairs)


# ============================================================================
# COMMANDES
# ============================================================================

def cmd_check(args) -> int:
    """Classification, propriete attendue et proprietes demandees."""
    poset = load_poset(args.file)
    classification = classify(poset)
    print(f"kind: {classification.kind.value}")
    if classification.witness:
        a, b = classification.witness
        print(f"witness: {a} {b} ({classification.side})")

    status = 0
    if args.expect and Kind(args.expect) is not classification.kind:
        print(f"expected {args.expect}, got {classification.kind.value}")
        status = 1

    for name in args.property or []:
        verdict = PROPERTIES[name](poset)
        print(f"{name}: {verdict.describe()}")
        if not verdict:
            status = 1
    return status


def cmd_bound(args) -> int:
    poset = load_poset(args.file)
    found = (mub if args.command == 'mub' else mlb)(poset, args.a, args.b)
    print(" ".join(poset.names(found)))
    return 0


def cmd_structures(args) -> int:
    """Ideaux ou filtres: liste, cloture ou verification."""
    kind = StructureKind.IDEAL if args.command == 'ideals' else StructureKind.FILTER
    poset = load_poset(args.file)

    if args.closure is not None:
        print(structure_label(poset, closure(poset, _labels_arg(poset, args.closure), kind)))
        return 0
    if args.check is not None:
        verdict = is_closed_structure(poset, _labels_arg(poset, args.check), kind)
        print(f"{kind.value}: {verdict.describe()}")
        return 0 if verdict else 1

    for structure in all_structures(poset, kind):
        print(structure_label(poset, structure))
    return 0


def cmd_congruences(args) -> int:
    poset = load_poset(args.file)
    if args.check:
        theta = Partition.parse(poset, args.check)
        congruence = is_congruence(poset, theta)
        print(f"congruence: {congruence.describe()}")
        print(f"star: {satisfies_star(poset, theta).describe()}")
        return 0 if congruence else 1

    for theta in all_congruences(poset):
        print(theta.format(poset))
    return 0


def cmd_quotient(args) -> int:
    poset = load_poset(args.file)
    theta = Partition.parse(poset, args.partition)
    quotient_poset, projection = quotient(poset, theta)
    sys.stdout.write(format_poset_file(quotient_poset, "quotient"))
    print("projection " + ",".join(
        f"{label}:{quotient_poset.labels[b]}" for label, b in zip(poset.labels, projection.image)
    ))

    if args.expect_iso:
        expected = load_poset(args.expect_iso)
        isomorphic, mapping = is_isomorphic(quotient_poset, expected)
        if not isomorphic:
            print("isomorphic: no")
            return 1
        print("isomorphic: yes " + ",".join(f"{a}:{b}" for a, b in mapping.items()))
    return 0


def cmd_hom(args) -> int:
    source = load_poset(args.source)
    target = load_poset(args.target)
    mapping = _map_arg(source, target, args.map)
    verdict = is_q_homomorphism(mapping)
    print(f"q-homomorphism: {verdict.describe()}")
    if args.kernel:
        print(f"kernel: {kernel_partition(mapping).format(source)}")
    return 0 if verdict else 1


def cmd_enumerate(args) -> int:
    """Balayage des theoremes; contre-exemples ecrits dans --out-dir."""
    sweep = get_config()['sweep']
    claims = None
    if args.claims:
        claims = [claim.strip() for claim in args.claims.split(',') if claim.strip()]
    report = verify_theorems(
        n_max=args.n,
        claims=claims,
        jobs=args.jobs,
        out_dir=Path(args.out_dir or sweep['out_dir']),
    )
    sys.stdout.write(format_report(report))
    for path in report.fixture_paths:
        print(f"written: {path}")
    return 0 if report.ok else 1


def cmd_dot(args) -> int:
    document = load_document(args.file)
    sys.stdout.write(emit_dot(document.poset, document.name))
    return 0


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlat",
        description="Quasi-treillis finis: classification, ideaux, congruences, balayage des theoremes"
    )
    subparsers = parser.add_subparsers(dest="command", help="Commandes")

    # check
    p_check = subparsers.add_parser("check", help="Classer un poset")
    p_check.add_argument("file", help="Fichier poset ou fixture:NAME")
    p_check.add_argument("--expect", choices=[k.value for k in Kind], help="Type attendu")
    p_check.add_argument("--property", action="append", choices=sorted(PROPERTIES),
                         help="Propriete a verifier (repetable)")
    p_check.set_defaults(func=cmd_check)

    # mub / mlb
    for name, help_text in (("mub", "Bornes superieures minimales"),
                            ("mlb", "Bornes inferieures maximales")):
        p_bound = subparsers.add_parser(name, help=help_text)
        p_bound.add_argument("file")
        p_bound.add_argument("a")
        p_bound.add_argument("b")
        p_bound.set_defaults(func=cmd_bound)

    # ideals / filters
    for name in ("ideals", "filters"):
        p_struct = subparsers.add_parser(name, help=f"Lister les {name}")
        p_struct.add_argument("file")
        group = p_struct.add_mutually_exclusive_group()
        group.add_argument("--closure", metavar="L1,L2", help="Plus petite structure contenant les labels")
        group.add_argument("--check", metavar="L1,L2", help="Verifier un sous-ensemble")
        p_struct.set_defaults(func=cmd_structures)

    # congruences
    p_cong = subparsers.add_parser("congruences", help="Lister les congruences")
    p_cong.add_argument("file")
    p_cong.add_argument("--check", metavar="PARTITION", help="Verifier une partition (0,m|1)")
    p_cong.set_defaults(func=cmd_congruences)

    # quotient
    p_quot = subparsers.add_parser("quotient", help="Quotient par une congruence")
    p_quot.add_argument("file")
    p_quot.add_argument("--partition", required=True, metavar="PARTITION")
    p_quot.add_argument("--expect-iso", metavar="FILE", help="Poset attendu a isomorphisme pres")
    p_quot.set_defaults(func=cmd_quotient)

    # hom
    p_hom = subparsers.add_parser("hom", help="Verifier un q-homomorphisme")
    p_hom.add_argument("source")
    p_hom.add_argument("target")
    p_hom.add_argument("--map", required=True, metavar="x:y,...")
    p_hom.add_argument("--kernel", action="store_true", help="Afficher la partition noyau")
    p_hom.set_defaults(func=cmd_hom)

    # enumerate
    p_enum = subparsers.add_parser("enumerate", help="Balayer les theoremes")
    p_enum.add_argument("--n", type=int, help="Taille maximale (defaut: borne par defaut de chaque affirmation)")
    p_enum.add_argument("--claims", metavar="ID,ID", help="Affirmations (defaut: toutes)")
    p_enum.add_argument("--jobs", type=int, help="Nombre de processus (defaut: sweep.jobs)")
    p_enum.add_argument("--out-dir", help="Repertoire des contre-exemples (defaut: sweep.out_dir)")
    p_enum.set_defaults(func=cmd_enumerate)

    # dot
    p_dot = subparsers.add_parser("dot", help="Diagramme de Hasse au format DOT")
    p_dot.add_argument("file")
    p_dot.set_defaults(func=cmd_dot)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute une commande; ne leve jamais, renvoie le code de sortie."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    if not hasattr(args, 'func'):
        parser.print_help(sys.stderr)
        return 2

    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (PreconditionError, TheoremCounterexample) as e:
        print(f"failed: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    load_dotenv()
    level = str(get_config()['logging']['level']).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
