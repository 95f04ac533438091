"""FastAPI service and timeline view algebra."""

from graphpix.server.app import create_app
from graphpix.server.state import ServerConfig, load_config, load_dataset, load_registry
from graphpix.server.views import (
    ViewCut,
    ViewError,
    default_view,
    drill,
    rollup,
    set_window,
    validate_cover,
    visible_positions,
)

__all__ = [
    "ServerConfig",
    "ViewCut",
    "ViewError",
    "create_app",
    "default_view",
    "drill",
    "load_config",
    "load_dataset",
    "load_registry",
    "rollup",
    "set_window",
    "validate_cover",
    "visible_positions",
]
