"""
Tool Registry for tier-filtered MCP tools

Tool modules register with a bare @server.tool(); the registry records what was
registered and removes tools outside the enabled set once every module has
been imported.
"""

import logging
from typing import Callable, List, Optional, Set

logger = logging.getLogger(__name__)

# None means every registered tool stays enabled
_enabled_tools: Optional[Set[str]] = None


def set_enabled_tools(tool_names: Optional[Set[str]]) -> None:
    global _enabled_tools
    _enabled_tools = None if tool_names is None else set(tool_names)


def get_enabled_tools() -> Optional[Set[str]]:
    return _enabled_tools


def is_tool_enabled(tool_name: str) -> bool:
    if _enabled_tools is None:
        return True
    return tool_name in _enabled_tools


def wrap_server_tool_method(server) -> None:
    """
    Record the name of every tool registered through server.tool().

    Idempotent: wrapping twice keeps the first wrapper.
    """
    if getattr(server, "_tracked_tools", None) is not None:
        return
    original_tool = server.tool
    server._tracked_tools = []

    def tracking_tool(*args, **kwargs):
        original_decorator = original_tool(*args, **kwargs)

        def wrapper_decorator(func: Callable) -> Callable:
            server._tracked_tools.append(func.__name__)
            return original_decorator(func)

        return wrapper_decorator

    server.tool = tracking_tool


def tracked_tools(server) -> List[str]:
    return list(getattr(server, "_tracked_tools", None) or [])


def _remove_tool(server, tool_name: str) -> bool:
    if hasattr(server, "remove_tool"):
        try:
            server.remove_tool(tool_name)
            return True
        except Exception as e:
            logger.debug(f"remove_tool({tool_name}) failed: {e}")
    tool_manager = getattr(server, "_tool_manager", None)
    registry = getattr(tool_manager, "_tools", None)
    if registry is not None and tool_name in registry:
        del registry[tool_name]
        return True
    return False


def filter_server_tools(server) -> int:
    """
    Remove disabled tools from the server after registration.

    Returns:
        int: Number of tools removed.
    """
    enabled_tools = get_enabled_tools()
    if enabled_tools is None:
        return 0

    removed = 0
    for tool_name in tracked_tools(server):
        if not is_tool_enabled(tool_name) and _remove_tool(server, tool_name):
            removed += 1

    if removed > 0:
        logger.info(f"Tool tier filtering: removed {removed} tools, {len(enabled_tools)} enabled")
    return removed
