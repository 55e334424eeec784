import logging

import pytest

from rtgq.types import Scenario
from rtgq.config import SettingsManager
from rtgq.utils.logs import setup_logging

# canonical RTG zones: theta = 1.4 retrials per unit time, unit mean loading time
CANONICAL = {
    "mm1": {"lambda": 0.5, "theta": 1.4, "service": "exp:1.0"},
    "md1": {"lambda": 0.5, "theta": 1.4, "service": "det:1.0"},
    "heavy": {"lambda": 0.9, "theta": 1.4, "service": "exp:1.0"},
    "erlang": {"lambda": 0.3, "theta": 1.4, "service": "erlang:2:2"},
    "hyper": {"lambda": 0.6, "theta": 1.4, "service": "hyper2:0.5:0.5:2.0"},
}


def scenario(name: str) -> Scenario:
    return Scenario.model_validate(CANONICAL[name])


@pytest.fixture(scope="session", autouse=True)
def configure_logging_fixture():
    setup_logging()
    yield
    # Teardown: Close all handlers to release file resources
    logger = logging.getLogger()
    handlers = logger.handlers[:]
    for handler in handlers:
        handler.close()
        logger.removeHandler(handler)


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are a process-wide singleton; tests that patch RTGQ_* env vars need a reload."""
    SettingsManager.reset()
    yield
    SettingsManager.reset()


@pytest.fixture
def mm1() -> Scenario:
    return scenario("mm1")


@pytest.fixture
def md1() -> Scenario:
    return scenario("md1")


@pytest.fixture
def heavy() -> Scenario:
    return scenario("heavy")


@pytest.fixture
def erlang_zone() -> Scenario:
    return scenario("erlang")


@pytest.fixture
def hyper_zone() -> Scenario:
    return scenario("hyper")
