"""operadkit command line entry point."""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from operadkit.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
