import argparse
import sys

from app.command import default_commands
from app.logger import define_log_level, logger


def main(argv=None) -> int:
    commands = default_commands()
    parser = argparse.ArgumentParser(
        prog="pointsp",
        description="Outlier-aware key point sampling and full points resampling for point clouds",
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Log at DEBUG level"
    )
    commands.build_parser(parser)
    args = parser.parse_args(argv)

    if args.verbose:
        define_log_level(print_level="DEBUG")

    result = commands.execute(name=args.command, args=args)
    if result.error:
        logger.error(f"{args.command}: {result.error}")
    elif result.output:
        print(result.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
