import sys

from acsudoku.cli import main

sys.exit(main())
