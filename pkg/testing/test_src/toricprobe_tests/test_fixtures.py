"""
Test fixtures for toricprobe tests.  Points the configuration at the test collateral and hands out arrangements.
"""
import os
from pathlib import Path
from typing import Optional

import pytest

from toricprobe.arrangement import LayerPoset, build_layer_poset
from toricprobe.config import CONFIG_ENV_VAR, set_config
from toricprobe.logs import get_logger, reset_logger
from toricprobe.logs.dispatchers.memory_dispatcher import MemoryDispatcher
from toricprobe.serialize import ArrangementFile, parse_input


class TestContext:
    """
    Context which wraps the testing state (paths, configuration) for use within unit tests.
    """

    """
    We infer the root path of the project, from this we can get the collateral paths etc.
    """
    project_path: Path

    """
    The path to the test collateral, which is used in testing.
    """
    test_collateral_path: Path

    config_path: Path

    def __init__(self, config_path: Path):
        """
        Constructor for the test context, finds the project path and sets things up.
        """
        self.project_path = get_project_dir()
        assert self.project_path.exists(), f"Project path should exist! {self.project_path}"
        self.test_collateral_path = self.project_path.joinpath('testing/collateral')

        #
        # Setup the configuration files
        #
        self.config_path: Path = config_path
        assert self.config_path.exists(), f"Config File path for testing should exist!  {self.config_path}"

    def arrangement_path(self, name: str) -> Path:
        path = self.test_collateral_path.joinpath('arrangements', name)
        assert path.exists(), f"Arrangement collateral should exist! {path}"
        return path

    def arrangement(self, name: str) -> ArrangementFile:
        return parse_input(self.arrangement_path(name))

    def poset(self, name: str) -> LayerPoset:
        arrangement = self.arrangement(name)
        return build_layer_poset(arrangement.ambient_rank, arrangement.atoms)

    def memory(self) -> MemoryDispatcher:
        """
        :return: The in memory dispatcher of the global logger, holding everything logged so far.
        """
        return get_logger().dispatchers['memory']


def get_project_dir() -> Optional[Path]:
    """
    Figure out what is the project directory, to figure out the collateral path..
    :return: The project dir that was found, or None if not found.
    """
    #
    # Start from the current directory and crawl up (up to 10 levels) and try to find
    # the .gitignore file, which we know is at the root.
    #
    cur_path = Path(os.curdir).resolve().absolute()
    for level in range(0, 10):
        if cur_path.joinpath('.gitignore').exists():
            return cur_path.resolve().absolute()

        if not cur_path.parent:
            return None

        cur_path = cur_path.parent

    return None


@pytest.fixture
def test_context():
    """
    Returns a test context which requires everything needed for testing.  The configuration and the logger are
    reloaded for every test.
    :return: The test context.
    """
    project_dir = get_project_dir()
    config_file = project_dir.joinpath('testing/collateral/testing/test_toricprobe_config.toml')
    os.environ[CONFIG_ENV_VAR] = str(config_file)
    set_config(None)
    reset_logger()
    return TestContext(config_path=config_file)
