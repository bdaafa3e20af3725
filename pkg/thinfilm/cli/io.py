# coding=utf-8
"""Output directories and run manifests of the command-line tool."""
from __future__ import annotations

import datetime
import hashlib
import json
import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np

from thinfilm.utils.errors import ThinFilmError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
MANIFEST_NAME = "manifest.json"
TOOL_NAME = "thinfilm"


def file_digest(path):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else repr(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def now():
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    """Provenance of one subcommand invocation.

    Attributes
    ----------
    files : dict
        Relative path of every emitted file mapped to its sha256 digest.
    """
    command: str
    argv: List[str]
    version: str
    seed: Optional[int] = None
    config: Dict = field(default_factory=dict)
    start_time: str = field(default_factory=now)
    end_time: Optional[str] = None
    exit_status: Optional[int] = None
    last_good_time: Optional[float] = None
    files: Dict[str, str] = field(default_factory=dict)
    extra: Dict = field(default_factory=dict)
    tool: str = TOOL_NAME

    def to_dict(self):
        return _jsonable(asdict(self))


class OutputDirectory:
    """Directory exclusively owned by one subcommand; tracks every file written into it."""

    def __init__(self, path):
        self.path = os.path.abspath(path)
        os.makedirs(self.path, exist_ok=True)
        self.written = []

    def _target(self, name):
        target = os.path.join(self.path, name)
        os.makedirs(os.path.dirname(target), exist_ok=True)
        if name not in self.written:
            self.written.append(name)
        return target

    def csv(self, name, frame):
        frame.to_csv(self._target(name), index=False, float_format=FLOAT_FORMAT)
        logger.debug("wrote %s (%d rows)", name, len(frame))

    def text(self, name, text):
        with open(self._target(name), "w") as handle:
            handle.write(text)

    def trajectory(self, name, trajectory):
        trajectory.save(self._target(name))

    def inventory(self):
        return {name: file_digest(os.path.join(self.path, name)) for name in sorted(self.written)}

    def write_manifest(self, manifest):
        """Finalize ``manifest`` with the file inventory, write it and audit the digests."""
        manifest.files = self.inventory()
        manifest.end_time = now()
        with open(os.path.join(self.path, MANIFEST_NAME), "w") as handle:
            json.dump(manifest.to_dict(), handle, sort_keys=True, indent=2)
            handle.write("\n")
        mismatched = audit_manifest(self.path)
        if mismatched:
            raise ThinFilmError("manifest audit failed for {}".format(", ".join(mismatched)))
        return manifest


def read_manifest(directory):
    with open(os.path.join(directory, MANIFEST_NAME)) as handle:
        return json.load(handle)


def audit_manifest(directory):
    """Files of the manifest in ``directory`` whose digest no longer matches (or are missing)."""
    manifest = read_manifest(directory)
    mismatched = []
    for name, digest in sorted(manifest.get("files", {}).items()):
        path = os.path.join(directory, name)
        if not os.path.exists(path) or file_digest(path) != digest:
            mismatched.append(name)
    return mismatched
