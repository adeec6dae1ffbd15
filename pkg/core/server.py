import logging
from importlib import metadata

from fastmcp import FastMCP

logger = logging.getLogger(__name__)


def _package_version() -> str:
    try:
        return metadata.version("explab")
    except metadata.PackageNotFoundError:
        return "dev"


server = FastMCP(name="explab")


def get_server_version() -> str:
    """Version string shown in the startup banner."""
    return _package_version()
