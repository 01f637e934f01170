import sys

from hasse_witt.cli import main

sys.exit(main())
