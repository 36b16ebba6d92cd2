import sys


def main(argv=None):
    from .cli import run
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
