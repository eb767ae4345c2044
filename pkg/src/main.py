import sys
from collections.abc import Sequence

from app import HomologyCli
from config.di_container import get_container
from config.logging_system import cleanup_logging


def main(argv: Sequence[str] | None = None) -> int:
    """Application entry point."""
    cli = HomologyCli(container=get_container())
    try:
        return cli.run(sys.argv[1:] if argv is None else argv)
    finally:
        cleanup_logging()


if __name__ == "__main__":
    raise SystemExit(main())
