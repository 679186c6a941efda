"""
Default values for local file paths used by ``marginal``.
"""
from pathlib import Path

# ====================================
HERE = Path(__file__).absolute()
DIR_MODULES = HERE.parent
DIR_PKG_DATA = DIR_MODULES / "pkg_data"

DEFAULTS_PATH = DIR_PKG_DATA / "marginal.toml"
EXAMPLE_CIRCUIT_PATH = DIR_PKG_DATA / "example.circ"
# ====================================
