from enum import Enum


class Kind(str, Enum):
    """Which embedding distribution a polynomial counts."""

    GENUS = "genus"
    EULER = "euler"
    CROSSCAP = "crosscap"

    @classmethod
    def parse(cls, text: str) -> "Kind":
        aliases = {"eulergenus": "euler", "euler-genus": "euler", "euler_genus": "euler"}
        key = text.strip().lower()
        return cls(aliases.get(key, key))
