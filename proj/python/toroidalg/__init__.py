"""Python access to the toroidalg verification suites.

Reports come back as parsed JSON; exact values are fraction strings.
"""

import json

from . import _core
from ._core import REPORT_SCHEMA, ConfigError, eala_charges, suite_commands, toroidal_charges

__all__ = [
    "REPORT_SCHEMA",
    "ConfigError",
    "eala_charges",
    "example_config",
    "run",
    "suite_commands",
    "toroidal_charges",
]


def example_config(name):
    return json.loads(_core.example_config(name))


def run(command, config):
    """Run a suite ("verify-algebra", ..., or "all") on a config dict or example name."""
    if isinstance(config, str):
        config = {"example": config}
    return json.loads(_core.run(command, json.dumps(config)))
