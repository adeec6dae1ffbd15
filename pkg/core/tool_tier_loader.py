"""
Tool Tier Loader Module

Loads core/tool_tiers.yaml, which lists the MCP tools of each library module
(divergence, tradeoff, composite, typelab, gallery) in three cumulative tiers.
"""

import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Set, Tuple

import yaml

from core.utils import UserInputError

logger = logging.getLogger(__name__)

TierLevel = Literal["core", "extended", "complete"]
TIER_ORDER: Tuple[str, ...] = ("core", "extended", "complete")


class ToolTierLoader:
    """Loads and resolves tool tiers from configuration."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Args:
            config_path: Path to a tool tiers YAML file; defaults to core/tool_tiers.yaml.
        """
        if config_path is None:
            config_path = Path(__file__).parent / "tool_tiers.yaml"
        self.config_path = Path(config_path)
        self._tiers_config: Optional[Dict] = None

    def _load_config(self) -> Dict:
        if self._tiers_config is not None:
            return self._tiers_config

        if not self.config_path.exists():
            raise FileNotFoundError(f"Tool tiers configuration not found: {self.config_path}")

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in tool tiers configuration: {e}")
        if not isinstance(loaded, dict):
            raise ValueError(f"Tool tiers configuration must map modules to tiers: {self.config_path}")
        self._tiers_config = loaded
        logger.info(f"Loaded tool tiers configuration from {self.config_path}")
        return self._tiers_config

    def get_available_modules(self) -> List[str]:
        return list(self._load_config().keys())

    def get_tools_for_tier(self, tier: TierLevel, modules: Optional[List[str]] = None) -> List[str]:
        """Tools listed under exactly this tier for the given modules (all when None)."""
        config = self._load_config()
        tools: List[str] = []
        for module in modules if modules is not None else self.get_available_modules():
            if module not in config:
                logger.warning(f"Module '{module}' not found in tool tiers configuration")
                continue
            tier_tools = (config[module] or {}).get(tier) or []
            tools.extend(tier_tools)
        return tools

    def get_tools_up_to_tier(self, tier: TierLevel, modules: Optional[List[str]] = None) -> List[str]:
        """Tools of every tier up to and including `tier`, without duplicates."""
        if tier not in TIER_ORDER:
            raise UserInputError(f"Unknown tool tier '{tier}'", field="tool_tier")
        tools: List[str] = []
        for current in TIER_ORDER[: TIER_ORDER.index(tier) + 1]:
            tools.extend(self.get_tools_for_tier(current, modules))
        return list(dict.fromkeys(tools))

    def get_modules_for_tools(self, tool_names: List[str]) -> Set[str]:
        config = self._load_config()
        wanted = set(tool_names)
        return {
            module
            for module, module_config in config.items()
            if any(wanted.intersection(t or []) for t in (module_config or {}).values())
        }


def resolve_tools_from_tier(
    tier: TierLevel, modules: Optional[List[str]] = None, config_path: Optional[str] = None
) -> Tuple[List[str], List[str]]:
    """
    Resolve tool names and the modules to import for a tier.

    Returns:
        tuple: (tool_names, module_names), module names sorted.
    """
    loader = ToolTierLoader(config_path)
    tools = loader.get_tools_up_to_tier(tier, modules)
    module_names = sorted(loader.get_modules_for_tools(tools))
    logger.info(
        f"Tier '{tier}' resolved to {len(tools)} tools across {len(module_names)} modules: {module_names}"
    )
    return tools, module_names
