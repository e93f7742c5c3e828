#!/usr/bin/env python3
"""
🔗 MAHAVIER TOOLKIT
===================
Exact checks for upper semi-continuous set-valued functions on [0,1]
and their finite Mahavier products.

Usage:
    python main.py validate mirror.rel
    python main.py idempotent mirror.rel
    python main.py mahavier constant-zero --n 3 --project 1,2 --compare-direct
    python main.py certify mirror --decomposition groups.json
    python main.py gallery --check
    python main.py --json certify origin-fan
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

try:
    from ui.commands import main
except ImportError as e:
    print(f"❌ Import error: {e}")
    print("🔧 Please install dependencies: pip install -r requirements.txt")
    sys.exit(2)


if __name__ == "__main__":
    sys.exit(main())
