"""Shared helpers for the experiment scripts."""

import argparse
import time
from pathlib import Path


def parser(doc: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description=doc)
    p.add_argument("--out", type=Path, default=None, help="directory for certificate files")
    return p


class Saver:
    def __init__(self, out: Path | None):
        self.out = out
        self.count = 0
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)

    def __call__(self, cert):
        if self.out is not None:
            self.count += 1
            cert.save(self.out / f"{self.count:04d}_{cert.problem}.json")
        return cert


class timer:
    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.ms = int(1000 * (time.monotonic() - self.t0))
