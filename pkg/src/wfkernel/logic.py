"""Logic selection: the base system plus a set of named extensions.

Extensions are identified by the letters used for their axioms/rules:
I, C, D, Chat (written Ĉ in print), Dhat, N and N2. Preset names map the
common logics onto extension sets; an explicit comma-separated set such as
"N,Chat" is also accepted wherever a logic name is expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Extension", "LogicSpec", "PRESETS", "parse_logic"]

# Canonical extension spellings.
EXT_I = "I"
EXT_C = "C"
EXT_D = "D"
EXT_CHAT = "Chat"
EXT_DHAT = "Dhat"
EXT_N = "N"
EXT_N2 = "N2"

Extension = str

_ALL_EXTENSIONS = (EXT_I, EXT_C, EXT_D, EXT_CHAT, EXT_DHAT, EXT_N, EXT_N2)
_CANON = {name.upper(): name for name in _ALL_EXTENSIONS}


@dataclass(frozen=True)
class LogicSpec:
    extensions: frozenset[Extension] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        bad = self.extensions - set(_ALL_EXTENSIONS)
        if bad:
            raise ValueError(f"unknown extensions: {sorted(bad)}")

    def has(self, ext: Extension) -> bool:
        return ext in self.extensions

    @property
    def name(self) -> str:
        """Preset name when one matches, else an explicit listing."""
        for name, spec in PRESETS.items():
            if spec == self:
                return name
        ordered = [e for e in _ALL_EXTENSIONS if e in self.extensions]
        return ",".join(ordered)

    def __str__(self) -> str:
        return self.name


def _mk(*exts: Extension) -> LogicSpec:
    return LogicSpec(frozenset(exts))


PRESETS: dict[str, LogicSpec] = {
    "WF": _mk(),
    "WFN": _mk(EXT_N),
    "WFN2": _mk(EXT_N2),
    "WFCHAT": _mk(EXT_CHAT),
    "WFDHAT": _mk(EXT_DHAT),
    "WFI": _mk(EXT_I),
    "WFC": _mk(EXT_C),
    "WFD": _mk(EXT_D),
    "F": _mk(EXT_I, EXT_C, EXT_D),
}


def parse_logic(name: str) -> LogicSpec:
    """Resolve a preset name or an explicit extension list (case-insensitive)."""
    key = name.strip().upper()
    if key in PRESETS:
        return PRESETS[key]
    if key in ("", "{}"):
        return PRESETS["WF"]
    exts = set()
    for part in key.strip("{}").split(","):
        part = part.strip()
        if not part:
            continue
        if part not in _CANON:
            raise ValueError(f"unknown logic or extension: {name!r}")
        exts.add(_CANON[part])
    return LogicSpec(frozenset(exts))
