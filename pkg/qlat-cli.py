#!/usr/bin/env python3
"""CLI qlat depuis un checkout (equivalent au script `qlat` installe)."""

import sys
from pathlib import Path

# Ajouter src au path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main

if __name__ == "__main__":
    main()
