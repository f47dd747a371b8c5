"""Exception taxonomy shared across the package.

Every error carries a stable ``code`` string so the HTTP layer and the CLI
can emit structured diagnostics without matching on types.
"""

from __future__ import annotations


class MediasceneError(Exception):
    """Base class for all package errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidCoordinateError(MediasceneError):
    code = "invalid_coordinate"


class InvalidParameterError(MediasceneError):
    code = "invalid_parameter"


class ParameterRangeError(MediasceneError):
    code = "parameter_range"


class DegenerateViewError(MediasceneError):
    code = "degenerate_view"


class InvalidPoseError(MediasceneError):
    code = "invalid_pose"


class InvalidRangeError(MediasceneError):
    code = "invalid_range"


class InvalidSizeError(MediasceneError):
    code = "invalid_size"


class EmptySlideshowError(MediasceneError):
    code = "empty_slideshow"


class UnsupportedMediaError(MediasceneError):
    code = "unsupported_media"


class LockedContentError(MediasceneError):
    """Raised when content exists but is not consumable yet.

    Carries the document id so callers can show lock feedback.
    """

    code = "locked_content"

    def __init__(self, message: str, document_id: str):
        super().__init__(message)
        self.document_id = document_id


class DanglingReferenceError(MediasceneError):
    code = "dangling_reference"


class MisconfiguredGuidanceError(MediasceneError):
    code = "misconfigured_guidance"


class InvalidBboxError(MediasceneError):
    code = "invalid_bbox"


class SceneParseError(MediasceneError):
    """Base for structural failures while reading a scene or episode file."""

    code = "parse_error"


class SceneSyntaxError(SceneParseError):
    """Input is not well-formed JSON (or not valid UTF-8)."""

    code = "syntax_error"

    def __init__(self, message: str, byte_offset: int):
        super().__init__(message)
        self.byte_offset = byte_offset


class FieldPathError(SceneParseError):
    """A required field is missing, mistyped, or carries an invalid value."""

    code = "field_path"

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
