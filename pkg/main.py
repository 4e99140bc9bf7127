#!/usr/bin/env python3
"""versaldef - versal deformation spaces of rational curves in threefolds."""


def main():
    """Application entry point."""
    from src.cli import main as cli_main

    cli_main()


if __name__ == '__main__':
    main()
