"""Name normalization and token-level matching.

Raw byline names are noisy: punctuation, initials, hyphenated compounds,
nicknames, typos. Everything downstream (the initial-based partitioners and
the heuristic matcher) works on the normalized token form produced here, so
the normalization rules are deliberately simple and deterministic:

* non-alphabetic characters are deleted, not turned into separators
  ("O'Brien" -> "obrien", "Mary-Jane" -> "maryjane");
* tokens are the whitespace-separated pieces that remain, lowercased;
* a token of length one is an initial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import CorpusFormatError


def _normalize_tokens(text: str) -> tuple[str, ...]:
    # Alphabetic characters are kept (including accented letters), whitespace
    # separates tokens, everything else is dropped in place.
    chars = []
    for ch in text.lower():
        if ch.isalpha():
            chars.append(ch)
        elif ch.isspace():
            chars.append(" ")
    return tuple("".join(chars).split())


@dataclass(frozen=True)
class ParsedName:
    """A normalized name: lowercase alphabetic tokens, position = index."""

    surname_tokens: tuple[str, ...]
    given_tokens: tuple[str, ...]

    @property
    def surname_joined(self) -> str:
        return "".join(self.surname_tokens)

    @property
    def given_joined(self) -> str:
        return "".join(self.given_tokens)

    def is_initial(self, position: int) -> bool:
        return len(self.given_tokens[position]) == 1

    def all_tokens(self) -> tuple[str, ...]:
        return self.surname_tokens + self.given_tokens


def parse_name(surname_raw: str, given_raw: str) -> ParsedName:
    """Split a raw (surname, given) pair into normalized token sequences.

    Raises CorpusFormatError if the surname is empty after normalization;
    an empty given part is legal and yields zero given tokens.
    """
    surname_tokens = _normalize_tokens(surname_raw)
    if not surname_tokens:
        raise CorpusFormatError(
            f"surname {surname_raw!r} is empty after normalization"
        )
    return ParsedName(surname_tokens, _normalize_tokens(given_raw))


def initial_signature(name: ParsedName) -> tuple[str, ...]:
    """First letter of each given token, in recorded order."""
    return tuple(tok[0] for tok in name.given_tokens)


class TokenMatch(enum.Enum):
    NONE = 0
    INITIALIZED = 1
    FULL = 2


def token_match(a: str, b: str) -> TokenMatch:
    """Compare two same-position tokens.

    FULL for equal strings; INITIALIZED when exactly one side is a single
    letter equal to the other's first letter. The outcomes are exclusive:
    equal single letters report FULL.
    """
    if a == b:
        return TokenMatch.FULL
    if len(a) == 1 and len(b) > 1 and b[0] == a:
        return TokenMatch.INITIALIZED
    if len(b) == 1 and len(a) > 1 and a[0] == b:
        return TokenMatch.INITIALIZED
    return TokenMatch.NONE


class NicknameTable:
    """Symmetric nickname lookup (dave <-> david) loaded from two-column TSV."""

    def __init__(self, pairs: list[tuple[str, str]] | None = None):
        self._links: dict[str, set[str]] = {}
        for a, b in pairs or []:
            self._add(a.strip().lower(), b.strip().lower())

    def _add(self, a: str, b: str) -> None:
        if not a or not b or a == b:
            return
        self._links.setdefault(a, set()).add(b)
        self._links.setdefault(b, set()).add(a)

    def linked(self, a: str, b: str) -> bool:
        return b in self._links.get(a, ())

    def __len__(self) -> int:
        return sum(len(v) for v in self._links.values()) // 2

    @classmethod
    def from_tsv(cls, path: str | Path) -> "NicknameTable":
        pairs = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise CorpusFormatError(
                        f"nickname table {path}: expected 2 tab-separated "
                        f"columns, got {len(parts)}: {line!r}"
                    )
                pairs.append((parts[0], parts[1]))
        return cls(pairs)

    @classmethod
    def bundled(cls) -> "NicknameTable":
        """The nickname table shipped with the package."""
        ref = resources.files("andnet.data").joinpath("nicknames.tsv")
        with resources.as_file(ref) as path:
            return cls.from_tsv(path)


def nickname_match(a: str, b: str, table: NicknameTable) -> bool:
    """True when the tokens are linked nicknames or one is a partial form
    (a prefix of length >= 2) of the other."""
    if table.linked(a, b):
        return True
    if len(a) >= 2 and b.startswith(a):
        return True
    if len(b) >= 2 and a.startswith(b):
        return True
    return False


def edit_distance_one(a: str, b: str) -> bool:
    """True iff the Levenshtein distance between the tokens is exactly 1."""
    la, lb = len(a), len(b)
    if abs(la - lb) > 1 or (a == b):
        return False
    if la > lb:
        a, b, la, lb = b, a, lb, la
    if la == lb:
        # Same length: exactly one substitution.
        return sum(1 for x, y in zip(a, b) if x != y) == 1
    # Length differs by one: b must equal a with one insertion.
    i = 0
    while i < la and a[i] == b[i]:
        i += 1
    return a[i:] == b[i + 1 :]


class OriginList:
    """Case-folded surname set marking a high-ambiguity origin group."""

    def __init__(self, surnames: list[str] | None = None):
        self._surnames = frozenset(
            s.strip().lower() for s in (surnames or []) if s.strip()
        )

    def __len__(self) -> int:
        return len(self._surnames)

    def __contains__(self, surname: str) -> bool:
        return surname.lower() in self._surnames

    def surnames(self) -> frozenset[str]:
        return self._surnames

    @classmethod
    def from_file(cls, path: str | Path) -> "OriginList":
        with open(path, encoding="utf-8") as fh:
            return cls([line.strip() for line in fh if line.strip()])

    def write(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for name in sorted(self._surnames):
                fh.write(name + "\n")


def in_origin_list(surname_tokens: tuple[str, ...], origins: OriginList) -> bool:
    """True when any surname token, or the joined surname, is in the list."""
    if len(origins) == 0:
        return False
    if any(tok in origins for tok in surname_tokens):
        return True
    return "".join(surname_tokens) in origins
