import sys

from ainfo.cli import main

sys.exit(main())
