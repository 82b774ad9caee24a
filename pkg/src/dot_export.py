"""Export DOT (graphviz) du diagramme de Hasse, bas vers haut."""

from typing import Optional

from .poset import Poset, covers_of


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def emit_dot(poset: Poset, name: Optional[str] = None) -> str:
    """
    Un noeud par element, une arete par couverture (bas -> haut).

    Noeuds et aretes tries par label: sortie identique octet pour octet
    d'une execution a l'autre.
    """
    lines = [f"digraph {_quote(name or 'poset')} {{", "  rankdir=BT;"]
    for label in sorted(poset.labels):
        lines.append(f"  {_quote(label)};")
    for low, high in sorted(covers_of(poset)):
        lines.append(f"  {_quote(low)} -> {_quote(high)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
