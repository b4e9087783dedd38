"""Entry point for `python -m haystack`."""

import sys

from haystack.main import main

sys.exit(main())
