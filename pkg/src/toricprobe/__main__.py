import sys

from toricprobe.cli import main

sys.exit(main())
