import sys

from critset.cli import main

sys.exit(main())
