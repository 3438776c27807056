""" Put the repository root on sys.path so the top-level packages
    import the way the application imports them.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
