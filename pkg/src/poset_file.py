"""
Format texte des posets (.qlat).

    poset NAME            # optionnel, premiere ligne significative
    elements l1 l2 ...    # une seule fois, avant les couvertures
    cover a b             # a < b, b couvre a

`#` ouvre un commentaire jusqu'a la fin de ligne; lignes vides ignorees.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import ParseError
from .poset import Poset, covers_of, from_covers

logger = logging.getLogger(__name__)

FIXTURES_DIR = Path(__file__).parent / "fixtures"
FIXTURE_PREFIX = "fixture:"
FIXTURE_SUFFIX = ".qlat"


@dataclass(frozen=True)
class PosetFile:
    name: Optional[str]
    poset: Poset


def _strip_comment(line: str) -> str:
    return line.split('#', 1)[0].strip()


def read_poset_document(text: str) -> PosetFile:
    """
    Analyse un document complet.

    Raises:
        ParseError: syntaxe invalide (avec numero de ligne)
        InputError: erreurs de from_covers (labels, cycles)
    """
    name = None
    labels = None
    covers = []
    seen_content = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        keyword, *args = line.split()

        if keyword == 'poset':
            if seen_content:
                raise ParseError("'poset' doit etre la premiere ligne", number)
            if len(args) != 1:
                raise ParseError("'poset' attend exactement un nom", number)
            name = args[0]
        elif keyword == 'elements':
            if labels is not None:
                raise ParseError("ligne 'elements' repetee", number)
            if not args:
                raise ParseError("'elements' sans aucun label", number)
            labels = args
        elif keyword == 'cover':
            if labels is None:
                raise ParseError("'cover' avant la ligne 'elements'", number)
            if len(args) != 2:
                raise ParseError("'cover' attend exactement deux labels", number)
            covers.append((args[0], args[1]))
        else:
            raise ParseError(f"mot-cle inconnu: {keyword!r}", number)
        seen_content = True

    if labels is None:
        raise ParseError("ligne 'elements' absente")
    return PosetFile(name, from_covers(labels, covers))


def parse_poset_file(text: str) -> Poset:
    return read_poset_document(text).poset


def format_poset_file(poset: Poset, name: Optional[str] = None,
                      comments: Sequence[str] = ()) -> str:
    """Inverse de parse_poset_file: couvertures triees par indices."""
    lines = []
    if name:
        lines.append(f"poset {name}")
    lines.extend(f"# {comment}" for comment in comments)
    lines.append("elements " + " ".join(poset.labels))
    lines.extend(f"cover {low} {high}" for low, high in covers_of(poset))
    return "\n".join(lines) + "\n"


def fixture_names() -> list[str]:
    return sorted(path.stem for path in FIXTURES_DIR.glob(f"*{FIXTURE_SUFFIX}"))


def load_fixture(name: str) -> Poset:
    return _fixture_document(name).poset


def _fixture_document(name: str) -> PosetFile:
    path = FIXTURES_DIR / f"{name}{FIXTURE_SUFFIX}"
    if not path.exists():
        raise ParseError(f"fixture inconnue: {name!r} (disponibles: {', '.join(fixture_names())})")
    return read_poset_document(path.read_text(encoding='utf-8'))


def load_poset(source: Union[str, Path]) -> Poset:
    """Chemin de fichier, ou `fixture:NAME` pour une fixture embarquee."""
    return load_document(source).poset


def load_document(source: Union[str, Path]) -> PosetFile:
    source = str(source)
    if source.startswith(FIXTURE_PREFIX):
        return _fixture_document(source[len(FIXTURE_PREFIX):])
    logger.debug(f"Lecture de {source}")
    try:
        text = Path(source).read_text(encoding='utf-8')
    except FileNotFoundError:
        raise ParseError(f"fichier introuvable: {source}") from None
    except UnicodeDecodeError:
        raise ParseError(f"fichier non UTF-8: {source}") from None
    except OSError as e:
        raise ParseError(f"lecture impossible: {source} ({e.strerror})") from None
    return read_poset_document(text)
