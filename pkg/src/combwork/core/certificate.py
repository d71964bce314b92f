"""Certificates: JSON records that an independent verifier can re-check.

A verifier sees only the certificate.  Each problem module registers one
verifier per ``problem`` id; the verifier re-derives validity from the
witness and raises ``VerificationError`` when anything is off.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

KINDS = ("construction", "exact", "verification", "bound")
TOOL_VERSION = "0.1.0"


class VerificationError(Exception):
    pass


def _param_str(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_param_str(x) for x in v)
    return str(v)


@dataclass
class Certificate:
    problem: str
    params: dict[str, str]
    kind: str
    value: str
    witness: Any
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        self.params = {str(k): _param_str(v) for k, v in self.params.items()}
        self.value = str(self.value)
        self.meta = {"runtime_ms": 0, "tool_version": TOOL_VERSION, "seed": None, **self.meta}

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        d = json.loads(text)
        missing = {"problem", "params", "kind", "value", "witness", "meta"} - d.keys()
        if missing:
            raise VerificationError(f"certificate missing fields {sorted(missing)}")
        return cls(**d)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Certificate":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def p_int(self, key: str) -> int:
        try:
            return int(self.params[key])
        except (KeyError, ValueError) as exc:
            raise VerificationError(f"bad or missing integer param {key!r}") from exc


_VERIFIERS: dict[str, Callable[[Certificate], None]] = {}


def register_verifier(problem: str):
    def deco(fn):
        if problem in _VERIFIERS:
            raise RuntimeError(f"verifier for {problem!r} registered twice")
        _VERIFIERS[problem] = fn
        return fn
    return deco


def verify(cert: Certificate) -> tuple[bool, str]:
    """Run the registered verifier; returns ``(ok, message)``."""
    # problem modules register on import
    from .. import problems  # noqa: F401

    fn = _VERIFIERS.get(cert.problem)
    if fn is None:
        return False, f"no verifier registered for problem {cert.problem!r}"
    try:
        fn(cert)
    except VerificationError as exc:
        return False, str(exc)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        return False, f"malformed witness: {type(exc).__name__}: {exc}"
    return True, "ok"


def check(cond: bool, msg: str) -> None:
    if not cond:
        raise VerificationError(msg)


def registered_problems() -> list[str]:
    from .. import problems  # noqa: F401

    return sorted(_VERIFIERS)
