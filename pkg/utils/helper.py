from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from dotenv import dotenv_values

from config.settings import Settings
from genfreq.exceptions import ParameterError


def resolve_seed(seed: Optional[int]) -> int:
    """Explicit seed, else GENFREQ_SEED from the environment / .env, else 0."""
    if seed is not None:
        return seed
    return Settings().GENFREQ_SEED


def read_config_file(path: Union[str, Path], known_keys: Iterable[str]) -> Dict[str, str]:
    """Parse a ``key = value`` file; keys are case-insensitive and must be known."""
    path = Path(path)
    if not path.is_file():
        raise ParameterError(f"config file not found: {path}")
    known = set(known_keys)
    values = {}
    for key, value in dotenv_values(path).items():
        name = key.lower()
        if name not in known:
            raise ParameterError(f"{path}: unknown config key {key!r} (expected one of {sorted(known)})")
        if value is not None:
            values[name] = value
    return values


def layered(
    defaults: Dict[str, Any], from_file: Dict[str, Any], overrides: Dict[str, Any], fields: Iterable[str]
) -> Dict[str, Any]:
    """flags > config file > defaults, restricted to ``fields``; None means not given."""
    fields = set(fields)
    merged = {k: v for k, v in defaults.items() if k in fields}
    merged.update({k: v for k, v in from_file.items() if k in fields})
    merged.update({k: v for k, v in overrides.items() if k in fields and v is not None})
    return merged


def resolve_data_path(path: Union[str, Path]) -> Path:
    """
    Resolve a tool-supplied path against DATA_DIR. Absolute paths and paths
    that resolve outside DATA_DIR (``..``, symlinks) are rejected.
    """
    root = Settings().DATA_DIR.resolve()
    candidate = Path(path)
    if candidate.is_absolute():
        raise ParameterError(f"absolute paths are not accepted, give a path relative to DATA_DIR: {path}")
    resolved = (root / candidate).resolve()
    if not resolved.is_relative_to(root) or resolved == root:
        raise ParameterError(f"path {path!s} is outside DATA_DIR")
    root.mkdir(parents=True, exist_ok=True)
    return resolved
