import sys

sys.path.append('src')

from unruh_gas.experiments.cli import main

if __name__ == '__main__':
    sys.exit(main())
