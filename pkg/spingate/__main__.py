"""Allow running spingate as a module: python -m spingate"""
import sys

from spingate.cli import main

if __name__ == "__main__":
    sys.exit(main())
