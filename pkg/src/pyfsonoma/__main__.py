"""Allow ``python -m pyfsonoma``."""

from pyfsonoma.cli import main

raise SystemExit(main())
