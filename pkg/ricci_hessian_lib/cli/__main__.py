import sys

from ricci_hessian_lib.cli import main


sys.exit(main())
