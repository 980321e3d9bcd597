import sys

from planted_lab import main

sys.exit(main())
