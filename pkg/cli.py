"""
Provides a command line interface for the labeling engine.

Usage:

```shell
python cli.py label --method hdl --k auto --labeled L.emb --labels L.csv --unlabeled U.emb --out O.csv --seed 1
```

See ``python cli.py --help`` for every subcommand.
"""
from hdl_labeler.cli import run

if __name__ == "__main__":
    run()
