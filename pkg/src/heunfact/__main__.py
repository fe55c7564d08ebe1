import sys

from heunfact.cli import main

sys.exit(main())
