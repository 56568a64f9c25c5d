import sys

from colorfix.cli import main

sys.exit(main())
