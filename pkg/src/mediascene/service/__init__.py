"""HTTP service: scene delivery, document content, guidance sessions."""

from .app import create_app
from .storage import (
    CONTENT_KEY_PREFIX,
    ContentStore,
    SceneRepository,
    SessionManager,
    SessionRecord,
)
