"""
Process entry point for ms-kit.

    python main.py zeros --alpha 10

All behaviour lives in cli.py and the numerical modules it calls.
"""

from __future__ import annotations

import os
import sys

# Ensure project root is on sys.path when running:
#   python /path/to/main.py ...
_PROJECT_ROOT = os.path.abspath(os.path.dirname(__file__))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from cli import cli
from config import APP_NAME


def main() -> None:
    cli(prog_name=APP_NAME)


if __name__ == "__main__":
    main()
