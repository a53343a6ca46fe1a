import sys

from hypin.cli import main

sys.exit(main())
