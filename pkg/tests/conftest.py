import sys
from pathlib import Path

# Test helpers (synthdata, oracles) live next to the tests.
sys.path.insert(0, str(Path(__file__).parent))
