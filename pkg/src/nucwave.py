############################################################################
### NucWave - ENTRY POINT
############################################################################

# Usage: python src/nucwave.py <modes|bulk|strips|sweep> --config scenario.toml --out results/


# Standard library imports
import sys

# Local modules imports
from cli_io.cli import main



if __name__ == '__main__':
    sys.exit(main())
