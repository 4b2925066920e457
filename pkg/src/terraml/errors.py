"""Exception hierarchy shared across the toolbox.

Every error raised on purpose derives from :class:`TerramlError`, so callers
(and the CLI) can distinguish configuration/data problems from genuine bugs.
"""

from __future__ import annotations


class TerramlError(Exception):
    """Base class for all toolbox errors."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message)
        self.message = message
        # Dotted location inside a run configuration, e.g.
        # "model.config.learning_rate". Filled in by the validator or by
        # instantiate_run when the failure maps to a config slot.
        self.path = path

    def __str__(self) -> str:
        if self.path:
            return f"{self.message} (at {self.path})"
        return self.message


# --- configuration ----------------------------------------------------------


class ParseError(TerramlError):
    """The configuration document is not valid JSON / not a mapping."""


class SchemaError(TerramlError):
    """Missing slot, wrong type, out-of-range value or unknown key."""


class UnknownComponent(TerramlError):
    """No factory registered under (kind, classname)."""

    def __init__(self, kind, classname: str, path: str | None = None):
        super().__init__(f"no {kind} registered under name {classname!r}", path)
        self.kind = kind
        self.classname = classname


class DuplicateRegistration(TerramlError):
    """The same (kind, classname) pair was registered twice."""


# --- datasets and images ----------------------------------------------------


class DatasetRootMissing(TerramlError):
    """Dataset root directory absent or lacking the expected layout."""


class LabelFileMalformed(TerramlError):
    """labels.csv violates the binary-matrix contract."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.row = row
        self.column = column


class ImageFileMissing(TerramlError):
    """An annotated image file does not exist on disk."""


class ImageDecodeError(TerramlError):
    """The file could not be decoded as a supported raster image."""


class UnsupportedBitDepth(TerramlError):
    """Pixel format not in the supported 8/16-bit set."""


class IndexOutOfRange(TerramlError):
    """Sample or class index outside the valid range."""


class ShapeMismatch(TerramlError):
    """Array shapes incompatible with the requested operation."""


class EmptyClassDirectoryWarning(UserWarning):
    """A class folder holds no images; the class is kept with count 0."""


# --- transforms, metrics, clustering ----------------------------------------


class InvalidParams(TerramlError):
    """Transform or algorithm parameters outside their valid range."""


class NonBinaryInput(TerramlError):
    """A label matrix contains entries other than 0 and 1."""


class LengthMismatch(TerramlError):
    """Paired sequences have different lengths."""


class NonFiniteValue(TerramlError):
    """Attempted to log NaN or infinity."""


class MonotonicityViolation(TerramlError):
    """Event steps must strictly increase per (run_id, tag)."""


# --- models and checkpoints -------------------------------------------------


class PretrainedUnavailable(TerramlError):
    """pretrained=true but no local checkpoint path is configured."""


class UncheckpointedModel(TerramlError):
    """Inference requested before prepare() or load_model()."""


class ManifestMissing(TerramlError):
    """Checkpoint directory lacks manifest.json."""


class ChecksumMismatch(TerramlError):
    """Weights blob does not match the manifest checksum."""


class VersionUnsupported(TerramlError):
    """Checkpoint format_version newer than this build understands."""


class ConfigMismatch(TerramlError):
    """Checkpoint configuration incompatible with the requested use."""


# --- tasks -------------------------------------------------------------------


class DegenerateSplit(TerramlError):
    """A class would receive zero samples on one side of the split."""

    def __init__(self, classes):
        names = ", ".join(classes)
        super().__init__(f"split leaves no samples on one side for: {names}")
        self.classes = tuple(classes)


class LockHeld(TerramlError):
    """Another run currently owns the artifact directory."""
