import sys

from galois2.cli import main

sys.exit(main())
