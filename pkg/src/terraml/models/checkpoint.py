"""Checkpoint persistence.

Layout: ``<model_directory>/<run_id>/epoch_<e>/{manifest.json, weights.bin}``
plus ``<model_directory>/<run_id>/best/`` for the best validation epoch.
The manifest holds exactly: classname, config, epoch, run_id, metrics,
format_version, weights_sha256. The weights blob is a versioned binary of
named float64 arrays, so save→load→forward is bitwise reproducible.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
from collections import OrderedDict

import numpy as np

from ..errors import (
    ChecksumMismatch,
    ConfigMismatch,
    ManifestMissing,
    ShapeMismatch,
    VersionUnsupported,
)

FORMAT_VERSION = 1
_MAGIC = b"TMLW"

MANIFEST_FILE = "manifest.json"
WEIGHTS_FILE = "weights.bin"


def save_weights(path, params: "OrderedDict[str, np.ndarray]") -> None:
    names = list(params)
    header = json.dumps(
        {"names": names, "shapes": [list(params[n].shape) for n in names]},
        sort_keys=True,
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", FORMAT_VERSION))
        fh.write(struct.pack("<Q", len(header)))
        fh.write(header)
        for name in names:
            fh.write(np.ascontiguousarray(params[name], dtype=np.float64).tobytes())


def load_weights(path) -> "OrderedDict[str, np.ndarray]":
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ChecksumMismatch(f"{path} is not a weights blob (bad magic {magic!r})")
        (version,) = struct.unpack("<I", fh.read(4))
        if version > FORMAT_VERSION:
            raise VersionUnsupported(f"weights format {version} > supported {FORMAT_VERSION}")
        (header_len,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(header_len).decode("utf-8"))
        out: OrderedDict[str, np.ndarray] = OrderedDict()
        for name, shape in zip(header["names"], header["shapes"]):
            count = int(np.prod(shape)) if shape else 1
            data = np.frombuffer(fh.read(count * 8), dtype=np.float64)
            if data.size != count:
                raise ChecksumMismatch(f"{path} truncated while reading {name!r}")
            out[name] = data.reshape(shape).copy()
        return out


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def parameter_checksum(params: dict) -> str:
    digest = hashlib.sha256()
    for name in params:
        digest.update(name.encode("utf-8"))
        digest.update(np.ascontiguousarray(params[name], dtype=np.float64).tobytes())
    return digest.hexdigest()


def checkpoint_path(model_directory, run_id: str, epoch) -> str:
    leaf = "best" if epoch == "best" else f"epoch_{int(epoch)}"
    return os.path.join(os.fspath(model_directory), str(run_id), leaf)


def save_checkpoint(model, directory, epoch: int, run_id: str, metrics: dict) -> str:
    os.makedirs(directory, exist_ok=True)
    weights_path = os.path.join(directory, WEIGHTS_FILE)
    save_weights(weights_path, model.parameters())
    manifest = {
        "classname": model.CLASSNAME,
        "config": model.config,
        "epoch": int(epoch),
        "run_id": str(run_id),
        "metrics": metrics,
        "format_version": FORMAT_VERSION,
        "weights_sha256": sha256_file(weights_path),
    }
    with open(os.path.join(directory, MANIFEST_FILE), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return os.fspath(directory)


def read_manifest(directory) -> dict:
    path = os.path.join(os.fspath(directory), MANIFEST_FILE)
    if not os.path.isfile(path):
        raise ManifestMissing(f"no {MANIFEST_FILE} in {directory}")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def find_checkpoint_dir(directory) -> str:
    """Resolves a user-supplied path to a concrete checkpoint directory.

    Tries the path itself, then ``<path>/best``, then ``<path>/<only run>/best``.
    """
    directory = os.fspath(directory)
    candidates = [directory, os.path.join(directory, "best")]
    if os.path.isdir(directory):
        children = sorted(
            d for d in os.listdir(directory) if os.path.isdir(os.path.join(directory, d))
        )
        if len(children) == 1:
            candidates.append(os.path.join(directory, children[0], "best"))
    for cand in candidates:
        if os.path.isfile(os.path.join(cand, MANIFEST_FILE)):
            return cand
    raise ManifestMissing(f"no checkpoint manifest found under {directory}")


def load_checkpoint(directory, expected_num_classes: int | None = None):
    """Model instance reconstructed from a checkpoint directory."""
    manifest = read_manifest(directory)
    version = manifest.get("format_version")
    if not isinstance(version, int) or version > FORMAT_VERSION:
        raise VersionUnsupported(f"format_version {version!r} > supported {FORMAT_VERSION}")
    weights_path = os.path.join(os.fspath(directory), WEIGHTS_FILE)
    if not os.path.isfile(weights_path):
        raise ManifestMissing(f"no {WEIGHTS_FILE} in {directory}")
    if sha256_file(weights_path) != manifest.get("weights_sha256"):
        raise ChecksumMismatch(f"weights blob does not match manifest checksum in {directory}")

    config = manifest.get("config", {})
    if expected_num_classes is not None and config.get("num_classes") != expected_num_classes:
        raise ConfigMismatch(
            f"checkpoint has num_classes={config.get('num_classes')}, "
            f"expected {expected_num_classes}"
        )

    from ..core.registry import ComponentKind, resolve_component

    cls = resolve_component(ComponentKind.MODEL, manifest.get("classname", ""))
    model = cls(config)
    model.build_and_init(seed=0)
    try:
        model.net.set_parameters(load_weights(weights_path))
    except ShapeMismatch as exc:
        raise ConfigMismatch(f"weights incompatible with manifest config: {exc}") from exc
    return model
