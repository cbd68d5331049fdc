"""Decision outcomes shared by all deciders."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

FAMILIES = (
    "pt",
    "subseq-single",
    "subseq-union",
    "suffix-single",
    "suffix-union",
    "suffix-bc",
    "prefix-single",
    "prefix-union",
    "prefix-bc",
)


def to_jsonable(value):
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    return value


@dataclass
class Verdict:
    """Outcome of one separability question.

    ``separable`` is None for inconclusive outcomes (a cap or deadline was hit).
    A witness describes a separator and only accompanies separable verdicts; a
    certificate is evidence of non-separability.
    """

    family: str
    separable: bool | None
    witness: Any = None
    certificate: Any = None
    stats: dict = field(default_factory=dict)
    note: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.witness is not None and self.separable is not True:
            raise ValueError("a witness requires a separable verdict")
        if self.certificate is not None and self.separable is not False:
            raise ValueError("a certificate requires a non-separable verdict")

    @property
    def inconclusive(self) -> bool:
        return self.separable is None

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "separable": self.separable,
            "witness": to_jsonable(self.witness),
            "certificate": to_jsonable(self.certificate),
            "stats": to_jsonable(self.stats),
        }
        if self.note:
            out["note"] = self.note
        return out
