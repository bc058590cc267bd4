"""Module entry point: ``python -m fuzzynet`` behaves like the CLI."""
from .cli import main

raise SystemExit(main())
