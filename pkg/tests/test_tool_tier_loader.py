import pytest

from core import tool_registry
from core.tool_tier_loader import ToolTierLoader, resolve_tools_from_tier
from core.utils import UserInputError

TIERS_YAML = """
divergence:
  core:
    - compute_divergence
  extended:
    - compute_psi
    - compute_divergence
  complete: []
gallery:
  core: []
  extended:
    - run_coin_report
  complete:
    - run_interval_report
"""


@pytest.fixture
def loader(tmp_path):
    path = tmp_path / "tiers.yaml"
    path.write_text(TIERS_YAML, encoding="utf-8")
    return ToolTierLoader(str(path))


@pytest.fixture(autouse=True)
def reset_enabled_tools():
    yield
    tool_registry.set_enabled_tools(None)


def test_tiers_are_cumulative(loader):
    assert loader.get_available_modules() == ["divergence", "gallery"]
    assert loader.get_tools_up_to_tier("core") == ["compute_divergence"]
    assert loader.get_tools_up_to_tier("extended") == ["compute_divergence", "compute_psi", "run_coin_report"]
    assert loader.get_tools_up_to_tier("complete", ["gallery"]) == ["run_coin_report", "run_interval_report"]
    assert loader.get_tools_for_tier("core", ["missing"]) == []


def test_modules_for_tools(loader):
    assert loader.get_modules_for_tools(["compute_psi"]) == {"divergence"}
    assert loader.get_modules_for_tools(["nothing"]) == set()


def test_unknown_tier(loader):
    with pytest.raises(UserInputError):
        loader.get_tools_up_to_tier("everything")


def test_missing_and_malformed_config(tmp_path):
    with pytest.raises(FileNotFoundError):
        ToolTierLoader(str(tmp_path / "absent.yaml")).get_available_modules()
    bad = tmp_path / "bad.yaml"
    bad.write_text("- just\n- a list\n", encoding="utf-8")
    with pytest.raises(ValueError):
        ToolTierLoader(str(bad)).get_available_modules()
    broken = tmp_path / "broken.yaml"
    broken.write_text("divergence: [core\n", encoding="utf-8")
    with pytest.raises(ValueError):
        ToolTierLoader(str(broken)).get_available_modules()


def test_shipped_tiers_resolve():
    tools, modules = resolve_tools_from_tier("core")
    assert "compute_divergence" in tools and "run_coin_report" not in tools
    assert "gallery" not in modules
    tools, modules = resolve_tools_from_tier("complete")
    assert modules == ["composite", "divergence", "gallery", "tradeoff", "typelab"]
    assert len(tools) == len(set(tools)) == 18


class FakeServer:
    def __init__(self):
        self.tools = {}

    def tool(self, *args, **kwargs):
        def decorator(func):
            self.tools[func.__name__] = func
            return func

        return decorator

    def remove_tool(self, name):
        del self.tools[name]


def test_registry_filters_tracked_tools():
    server = FakeServer()
    tool_registry.wrap_server_tool_method(server)
    tool_registry.wrap_server_tool_method(server)

    @server.tool()
    def compute_divergence():
        pass

    @server.tool()
    def compute_psi():
        pass

    assert tool_registry.tracked_tools(server) == ["compute_divergence", "compute_psi"]
    assert tool_registry.filter_server_tools(server) == 0

    tool_registry.set_enabled_tools({"compute_divergence"})
    assert tool_registry.is_tool_enabled("compute_divergence")
    assert not tool_registry.is_tool_enabled("compute_psi")
    assert tool_registry.filter_server_tools(server) == 1
    assert set(server.tools) == {"compute_divergence"}
