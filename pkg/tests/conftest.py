"""Make the suite runnable straight from a checkout, without an install."""

import os
import sys
from pathlib import Path

SRC = str(Path(__file__).resolve().parent.parent / "src")

try:
    import spinmcg  # noqa: F401
except ImportError:
    sys.path.insert(0, SRC)

# subprocess CLI invocations need the same resolution
_existing = os.environ.get("PYTHONPATH")
if SRC not in (_existing or "").split(os.pathsep):
    os.environ["PYTHONPATH"] = SRC + ((os.pathsep + _existing) if _existing else "")
