"""Shared fixtures: src on sys.path, gallery relations and a quiet config"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from engines.gallery import example  # noqa: E402
from utils.config import ToolkitConfig  # noqa: E402


@pytest.fixture
def mirror():
    return example("mirror")


@pytest.fixture
def tent():
    return example("tent")


@pytest.fixture
def constant_zero():
    return example("constant-zero")


@pytest.fixture
def quiet_config():
    """Defaults without a log file"""
    return ToolkitConfig()
