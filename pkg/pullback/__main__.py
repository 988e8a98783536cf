"""Allow running as ``python -m pullback``."""
import sys

from .cli import main

sys.exit(main())
