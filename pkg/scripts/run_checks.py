import sys

from isogeny_sums.cli import main

if __name__ == "__main__":
    sys.exit(main())
