import sys

from freelp.cli import main

sys.exit(main())
