from __future__ import annotations

from verdex.cli import main


if __name__ == "__main__":
    main(prog_name="verdex")
