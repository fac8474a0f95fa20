import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# keep the realized-group cache out of the user's home directory; the cache is
# shared across the session so each catalog group is realized once
_CACHE = Path(__file__).resolve().parent.parent / ".pytest_cache" / "ipv-groups"
os.environ.setdefault("IPV_CACHE_DIR", str(_CACHE))


@pytest.fixture(scope="session")
def manifest():
    from ipv.catalog import load_catalog
    return load_catalog(realize_groups=False)


@pytest.fixture(scope="session")
def group(manifest):
    return manifest.group


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
