"""Hierarchie d'exceptions de qlat."""

from typing import Optional


class QlatError(Exception):
    """Racine de toutes les erreurs de la bibliotheque."""


# ============================================================================
# ERREURS D'ENTREE (donnees mal formees)
# ============================================================================

class InputError(QlatError, ValueError):
    """Donnees d'entree invalides (labels, relations, fichiers, arguments)."""


class InvalidLabel(InputError):
    pass


class DuplicateLabel(InputError):
    pass


class UnknownLabel(InputError):
    pass


class EmptyPoset(InputError):
    pass


class CycleDetected(InputError):
    pass


class NotReflexive(InputError):
    pass


class NotAntisymmetric(InputError):
    pass


class NotTransitive(InputError):
    pass


class SizeExceeded(InputError):
    pass


class InvalidPartition(InputError):
    pass


class InvalidMap(InputError):
    pass


class UnknownClaim(InputError):
    pass


class ParseError(InputError):
    """Erreur de syntaxe dans un fichier poset, avec numero de ligne."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"ligne {line}: {message}"
        super().__init__(message)


# ============================================================================
# PRECONDITIONS NON SATISFAITES
# ============================================================================

class PreconditionError(QlatError):
    """L'objet est valide mais ne satisfait pas l'hypothese de l'operation."""


class NotAQuasiLattice(PreconditionError):
    pass


class NotACongruence(PreconditionError):
    pass


class StarViolated(PreconditionError):
    pass


class NotSurjective(PreconditionError):
    pass


class TargetNotLattice(PreconditionError):
    pass


# ============================================================================
# CONTRE-EXEMPLES AUX THEOREMES (verifications internes)
# ============================================================================

class TheoremCounterexample(QlatError):
    """
    Une verification interne a echoue sur une entree valide.

    Ne doit jamais arriver: l'atteindre refute un theoreme verifie par le
    harnais. Porte le Verdict qui decrit l'echec.
    """

    def __init__(self, message: str, verdict=None):
        self.verdict = verdict
        if verdict is not None:
            message = f"{message}: {verdict.describe()}"
        super().__init__(message)


class QuotientNotPoset(TheoremCounterexample):
    pass


class QuotientNotLattice(TheoremCounterexample):
    pass


class QuotientNotHomomorphism(TheoremCounterexample):
    pass


class KernelNotCongruence(TheoremCounterexample):
    pass


class StructureNotLattice(TheoremCounterexample):
    pass
