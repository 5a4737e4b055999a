from rich.traceback import install

from qnlwe.cli import main

install(show_locals=True)


if __name__ == "__main__":
    main()
