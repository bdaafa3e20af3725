from .io import RunManifest, OutputDirectory, audit_manifest, file_digest, read_manifest
from .main import main, build_parser

__all__ = ["RunManifest",
           "OutputDirectory",
           "audit_manifest",
           "file_digest",
           "read_manifest",
           "main",
           "build_parser"]
