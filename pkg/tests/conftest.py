import os
import sys
from pathlib import Path

from hypothesis import settings

# make the sibling oracle/strategy helpers importable regardless of rootdir
sys.path.insert(0, str(Path(__file__).parent))

# reproducible property runs by default; HYPOTHESIS_PROFILE=search explores
# fresh random examples with a bigger budget
settings.register_profile("ci", deadline=None, derandomize=True)
settings.register_profile("search", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))
