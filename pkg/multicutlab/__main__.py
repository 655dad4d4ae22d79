import sys

from multicutlab.cli import main

sys.exit(main())
