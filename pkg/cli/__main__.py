import sys

import cli

sys.exit(cli.main())
