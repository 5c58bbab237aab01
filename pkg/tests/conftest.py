import sys
from pathlib import Path

try:
    import triconc  # noqa: F401
except ImportError:
    # fresh checkout without `pip install -e .`: use the src tree directly
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
