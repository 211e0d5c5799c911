"""Entry point for ``python -m rafkit``."""

from .cli import main

if __name__ == "__main__":
    main()
