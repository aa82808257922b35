"""``python3 -m qresum`` entry point."""

import sys

from .cli import main

sys.exit(main())
