"""Rewrite the golden transcripts: ``python3 tests/golden/regenerate.py``."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from golden_tools import GOLDEN, GOLDEN_PROGRAMS, transcript  # noqa: E402

for name in GOLDEN_PROGRAMS:
    (GOLDEN / f"{name}.json").write_text(json.dumps(transcript(name), indent=2) + "\n")
    print("wrote", name)
