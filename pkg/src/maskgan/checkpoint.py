"""Single-file checkpoint container: a zip of named float arrays plus a
manifest carrying the config, schedule position, and a content checksum.
Format string: maskgan-ckpt-v1."""

from __future__ import annotations

import hashlib
import io
import json
import zipfile
from pathlib import Path

import numpy as np

CHECKPOINT_FORMAT = "maskgan-ckpt-v1"
_MANIFEST = "manifest.json"


class CheckpointError(Exception):
    """Corrupt, truncated, version-mismatched, or inconsistent checkpoint."""


def arrays_checksum(arrays: dict[str, np.ndarray]) -> str:
    digest = hashlib.sha256()
    for name in sorted(arrays):
        arr = np.asarray(arrays[name])
        digest.update(name.encode())
        digest.update(str(arr.dtype).encode())
        digest.update(str(arr.shape).encode())
        digest.update(arr.tobytes())
    return digest.hexdigest()


def save_checkpoint(
    path: str | Path,
    arrays: dict[str, np.ndarray],
    *,
    generator_config: dict,
    config_hash: str,
    step: int,
    phase_resolution: int,
    phase_mode: str,
    extra: dict | None = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    manifest = {
        "format": CHECKPOINT_FORMAT,
        "generator_config": generator_config,
        "config_hash": config_hash,
        "step": int(step),
        "phase": {"resolution": int(phase_resolution), "mode": phase_mode},
        "checksum": arrays_checksum(arrays),
    }
    if extra:
        manifest["extra"] = extra
    tmp = path.with_suffix(path.suffix + ".tmp")
    with zipfile.ZipFile(tmp, "w", compression=zipfile.ZIP_STORED) as zf:
        zf.writestr(_MANIFEST, json.dumps(manifest, indent=2))
        for name in sorted(arrays):
            buf = io.BytesIO()
            np.save(buf, np.asarray(arrays[name]))
            zf.writestr(f"arrays/{name}.npy", buf.getvalue())
    tmp.rename(path)
    return path


def load_checkpoint(path: str | Path) -> tuple[dict[str, np.ndarray], dict]:
    """Load and verify a checkpoint; raises CheckpointError on any fault.

    The content checksum recorded in the manifest is recomputed over the
    loaded arrays, so truncation or bit corruption never yields a partial
    model.
    """
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"no such checkpoint: {path}")
    try:
        with zipfile.ZipFile(path) as zf:
            names = zf.namelist()
            if _MANIFEST not in names:
                raise CheckpointError(f"{path} has no manifest")
            manifest = json.loads(zf.read(_MANIFEST))
            arrays = {}
            for member in names:
                if member.startswith("arrays/") and member.endswith(".npy"):
                    key = member[len("arrays/") : -len(".npy")]
                    arrays[key] = np.load(io.BytesIO(zf.read(member)))
    except (zipfile.BadZipFile, ValueError, KeyError, EOFError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc

    if manifest.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError(
            f"{path}: format {manifest.get('format')!r}, expected {CHECKPOINT_FORMAT!r}"
        )
    actual = arrays_checksum(arrays)
    if actual != manifest.get("checksum"):
        raise CheckpointError(
            f"{path}: checksum mismatch (manifest {manifest.get('checksum')}, arrays {actual})"
        )
    return arrays, manifest
