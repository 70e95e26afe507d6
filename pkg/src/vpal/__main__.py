import sys

from vpal.cli import main

sys.exit(main())
