"""
Finite q-oscillator tables, fractional q-Kravchuk transforms and their checks
"""
import sys

import cli

if __name__ == "__main__":
    sys.exit(cli.main())
