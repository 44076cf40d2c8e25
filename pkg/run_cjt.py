"""
Run one cjt command from the repository root without installing the package.

    python run_cjt.py verify --group klein4 --module regular
    python run_cjt.py cjt --group klein4 --module cyclic:1
    python run_cjt.py bundle --config data/heisenberg3_free.toml
"""

import sys

from cjt.cli import main

if __name__ == "__main__":
    sys.exit(main())
