"""Configuration: config/settings.yaml, puis surcharge par variables d'environnement."""

import copy
import logging
import os
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).parent.parent / "config" / "settings.yaml"

DEFAULTS = {
    'enumeration': {
        'poset_limit': 6,
        'partition_limit': 10,
        'structure_limit': 20,
        'congruence_limit': 10,
    },
    'sweep': {
        'jobs': 1,
        'out_dir': './counterexamples',
    },
    'logging': {
        'level': 'INFO',
    },
}

# (variable, section, cle, conversion)
ENV_OVERRIDES = [
    ('QLAT_JOBS', 'sweep', 'jobs', int),
    ('QLAT_OUT_DIR', 'sweep', 'out_dir', str),
    ('QLAT_LOG_LEVEL', 'logging', 'level', str),
    ('QLAT_STRUCTURE_LIMIT', 'enumeration', 'structure_limit', int),
]

_config = None


def _merge(base: dict, override: dict) -> dict:
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def get_config() -> dict:
    """Charge la configuration (une seule fois par processus)."""
    global _config
    if _config is not None:
        return _config

    config = copy.deepcopy(DEFAULTS)
    if CONFIG_PATH.exists():
        with open(CONFIG_PATH, 'r', encoding='utf-8') as f:
            _merge(config, yaml.safe_load(f) or {})

    for variable, section, key, convert in ENV_OVERRIDES:
        raw = os.getenv(variable)
        if raw:
            try:
                config[section][key] = convert(raw)
            except ValueError:
                logger.warning(f"{variable} ignore: valeur invalide {raw!r}")

    _config = config
    return _config


def reset_config():
    """Oublie la configuration chargee (tests, rechargement)."""
    global _config
    _config = None


def get_limit(name: str) -> int:
    """Borne d'enumeration nommee (section 'enumeration')."""
    return int(get_config()['enumeration'][name])
