"""Allow running as ``python -m evals``."""
from .runner import main

main()
