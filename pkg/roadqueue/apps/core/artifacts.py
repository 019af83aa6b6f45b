"""
Deterministic artifact writers.

Every CSV and JSON file carries the SHA-256 of the canonical run
configuration and nothing time dependent, so identical configurations give
byte-identical files.
"""

import enum
import hashlib
import json
import logging
import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from django.conf import settings

logger = logging.getLogger(__name__)

DIGEST_KEY = 'config_sha256'


def config_digest(document: Mapping[str, Any]) -> str:
    canonical = json.dumps(document, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def _digits(digits: int | None) -> int:
    return settings.ROADQUEUE_FLOAT_DIGITS if digits is None else digits


def to_plain(value: Any, digits: int | None = None) -> Any:
    """Convert numpy containers and floats into JSON-ready values with fixed precision."""
    digits = _digits(digits)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, Mapping):
        return {str(key): to_plain(item, digits) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist(), digits)
    if isinstance(value, list | tuple):
        return [to_plain(item, digits) for item in value]
    if isinstance(value, bool | np.bool_):
        return bool(value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f'{value:.{digits}g}')
    return value


def write_json(path: Path, payload: Mapping[str, Any], digest: str, digits: int | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {DIGEST_KEY: digest, **to_plain(payload, digits)}
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + '\n', encoding='utf-8')
    logger.info('Wrote %s', path)
    return path


def write_table(path: Path, frame: pd.DataFrame, digest: str, digits: int | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', encoding='utf-8', newline='') as handle:
        handle.write(f'# {DIGEST_KEY.replace("_", "-")}: {digest}\n')
        frame.to_csv(handle, index=False, float_format=f'%.{_digits(digits)}g', lineterminator='\n')
    logger.info('Wrote %s (%d rows)', path, len(frame))
    return path
