import sys

from sepspec.cli import main

sys.exit(main())
