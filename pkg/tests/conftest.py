import os

import hypothesis
import pytest
from hypothesis import strategies as st

from src.config import ENV_OVERRIDES, reset_config
from src.partition import Partition
from src.poset import Poset, from_covers, from_relation
from src.poset_file import load_fixture

hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Chaque test repart des valeurs de config/settings.yaml, sans surcharge."""
    for variable, *_ in ENV_OVERRIDES:
        monkeypatch.delenv(variable, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def nonassoc8() -> Poset:
    return load_fixture("nonassoc8")


@pytest.fixture
def chain2() -> Poset:
    return load_fixture("chain2")


@pytest.fixture
def chain3() -> Poset:
    return load_fixture("chain3")


@pytest.fixture
def hex6() -> Poset:
    return load_fixture("hex6")


@pytest.fixture
def m3() -> Poset:
    return load_fixture("m3")


@pytest.fixture
def n5() -> Poset:
    return load_fixture("n5")


@pytest.fixture
def antichain2() -> Poset:
    return from_relation(["a", "b"], [("a", "a"), ("b", "b")])


@pytest.fixture
def theta_m(hex6) -> Partition:
    return Partition.parse(hex6, "⊥|a,b,c,d|⊤")


# ============================================================================
# STRATEGIES
# ============================================================================

@st.composite
def posets(draw, min_size: int = 1, max_size: int = 6) -> Poset:
    """Poset aleatoire: couvertures tirees dans le triangle superieur (donc acyclique)."""
    n = draw(st.integers(min_size, max_size))
    labels = [f"p{i}" for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    covers = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_covers(labels, covers)


@st.composite
def quasi_lattices(draw, max_inner: int = 4) -> Poset:
    """Poset aleatoire borne par 'bot' et 'top': toute paire a des bornes."""
    inner = draw(posets(min_size=1, max_size=max_inner))
    labels = ["bot", *inner.labels, "top"]
    covers = [(low, high) for low, high in _relation(inner) if low != high]
    covers += [("bot", label) for label in inner.labels]
    covers += [(label, "top") for label in inner.labels]
    return from_covers(labels, covers)


def _relation(poset: Poset):
    return [(poset.labels[i], poset.labels[j])
            for i in range(poset.n) for j in range(poset.n) if poset.leq_idx(i, j)]


@st.composite
def poset_and_subset(draw, poset_strategy=None):
    poset = draw(poset_strategy or posets())
    subset = draw(st.integers(0, poset.full))
    return poset, subset


@st.composite
def rgs_strings(draw, min_size: int = 1, max_size: int = 7) -> tuple[int, ...]:
    """Chaine a croissance restreinte aleatoire."""
    n = draw(st.integers(min_size, max_size))
    rgs = [0]
    for _ in range(n - 1):
        rgs.append(draw(st.integers(0, max(rgs) + 1)))
    return tuple(rgs)
