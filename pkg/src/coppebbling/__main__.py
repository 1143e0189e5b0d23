from coppebbling.cli import main
import sys

sys.exit(main())
