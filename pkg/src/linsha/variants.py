"""Named weakened variants assembled from configuration flags."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .primitives import BoolMode, ExpansionKind, SboxMode

MAX_STEPS = 128  # bound on N keeps expansion buffers small


@dataclass(frozen=True)
class VariantConfig:
    sbox_mode: SboxMode
    bool_mode: BoolMode
    expansion_kind: ExpansionKind
    steps: int = 64
    feed_forward: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.steps <= MAX_STEPS:
            raise ValueError(f"steps must be in [0, {MAX_STEPS}], got {self.steps}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "sbox_mode": self.sbox_mode.value,
                "bool_mode": self.bool_mode.value,
                "expansion_kind": self.expansion_kind.value,
                "steps": self.steps,
                "feed_forward": self.feed_forward,
            }
        )

    @classmethod
    def from_json(cls, doc: str) -> "VariantConfig":
        raw = json.loads(doc)
        return cls(
            sbox_mode=SboxMode(raw["sbox_mode"]),
            bool_mode=BoolMode(raw["bool_mode"]),
            expansion_kind=ExpansionKind(raw["expansion_kind"]),
            steps=int(raw["steps"]),
            feed_forward=bool(raw["feed_forward"]),
        )

    def replace(self, **kw) -> "VariantConfig":
        fields = {
            "sbox_mode": self.sbox_mode,
            "bool_mode": self.bool_mode,
            "expansion_kind": self.expansion_kind,
            "steps": self.steps,
            "feed_forward": self.feed_forward,
        }
        fields.update(kw)
        return VariantConfig(**fields)


_PRESETS = {
    # every operation linear over Z_2^32: identity S-boxes, x+y+z Boolean ops,
    # expansion without the small sigmas
    "add_linear": VariantConfig(
        SboxMode.IDENTITY, BoolMode.MODULAR_ADD, ExpansionKind.SHA256_ADD_ID_SIGMA
    ),
    # keeps the real Maj/Ch, drops all four S-boxes
    "no_sbox": VariantConfig(
        SboxMode.IDENTITY, BoolMode.STANDARD, ExpansionKind.SHA256_ADD_ID_SIGMA
    ),
    "standard": VariantConfig(SboxMode.STANDARD, BoolMode.STANDARD, ExpansionKind.SHA256_ADD),
    # expansion additions replaced by XOR, compression untouched
    "xor_expansion": VariantConfig(SboxMode.STANDARD, BoolMode.STANDARD, ExpansionKind.SHA256_XOR),
}


def make_variant(name: str) -> VariantConfig:
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown variant {name!r}; known: {sorted(_PRESETS)}") from None
