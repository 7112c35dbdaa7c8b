import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.cli.commands import EXIT_INVALID, run
from app.cli.parser import parse_args
from app.core.config import settings

logger = logging.getLogger("main")

def configure_logging() -> None:
    # Diagnostics go to stderr; stdout carries the data document
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ]
    )

def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point; returns the process exit code."""
    configure_logging()
    try:
        config = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INVALID
    except ValidationError as e:
        for error in e.errors():
            logger.error(f"Invalid arguments: {error['msg']}")
        return EXIT_INVALID

    logger.debug(f"Running {config.command.value} with {config}")
    try:
        return run(config)
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return 1

if __name__ == "__main__":
    sys.exit(main())
