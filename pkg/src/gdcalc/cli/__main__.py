import sys

from gdcalc.cli import main

if __name__ == "__main__":
    sys.exit(main())
