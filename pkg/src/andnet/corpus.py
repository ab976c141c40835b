"""Bibliographic corpus model and file formats.

A corpus is a list of papers, each with an ordered byline of author
mentions. On disk a corpus is JSONL, one paper per line:

    {"paper_id": str, "year": int?, "venue": str?,
     "authors": [{"surname": str, "given": str, "given_full": str?,
                  "affiliations": [str], "email": str?}]}

Clusterings (both ground truth and method output) are TSV files with one
"mention_id<TAB>cluster_id" row per mention. Mention ids are always
"paperId:index" with the 0-based byline position.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator

from .errors import CorpusFormatError, LabelFileError

STOPLIST_SIZE = 20
MIN_TEAM = 2
MAX_TEAM = 99

_WORD_RE = re.compile(r"[a-z0-9]+")


def affiliation_words(text: str) -> list[str]:
    """Case-folded alphanumeric words of an affiliation string."""
    return _WORD_RE.findall(text.lower())


@dataclass(frozen=True)
class AuthorMention:
    mention_id: str
    surname_raw: str
    given_raw: str
    given_full_raw: str | None = None
    affiliations: tuple[str, ...] = ()
    email: str | None = None

    def __post_init__(self) -> None:
        if not self.surname_raw.strip():
            raise CorpusFormatError(
                f"mention {self.mention_id}: surname is empty"
            )


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    authors: tuple[AuthorMention, ...]
    year: int | None = None
    venue: str | None = None


class Corpus:
    """An immutable collection of papers plus the affiliation stoplist.

    The stoplist holds the 20 most frequent case-folded affiliation words
    (ties broken lexicographically) and is recomputed whenever a corpus is
    constructed, so a filtered corpus gets the stoplist of the data it
    actually contains.
    """

    def __init__(self, papers: list[PaperRecord] | tuple[PaperRecord, ...]):
        self.papers: tuple[PaperRecord, ...] = tuple(papers)
        seen: set[str] = set()
        for paper in self.papers:
            if paper.paper_id in seen:
                raise CorpusFormatError(f"duplicate paper_id {paper.paper_id!r}")
            seen.add(paper.paper_id)
        self.affiliation_stoplist: tuple[str, ...] = self._compute_stoplist()

    def _compute_stoplist(self) -> tuple[str, ...]:
        counts: Counter[str] = Counter()
        for paper in self.papers:
            for mention in paper.authors:
                for affil in mention.affiliations:
                    counts.update(affiliation_words(affil))
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return tuple(word for word, _ in ranked[:STOPLIST_SIZE])

    @cached_property
    def mentions(self) -> tuple[AuthorMention, ...]:
        return tuple(m for paper in self.papers for m in paper.authors)

    @cached_property
    def mention_ids(self) -> frozenset[str]:
        return frozenset(m.mention_id for m in self.mentions)

    @cached_property
    def _mention_index(self) -> dict[str, tuple[AuthorMention, PaperRecord]]:
        index = {}
        for paper in self.papers:
            for mention in paper.authors:
                index[mention.mention_id] = (mention, paper)
        return index

    def mention(self, mention_id: str) -> AuthorMention:
        return self._mention_index[mention_id][0]

    def paper_of(self, mention_id: str) -> PaperRecord:
        return self._mention_index[mention_id][1]

    def __len__(self) -> int:
        return len(self.papers)

    def __iter__(self) -> Iterator[PaperRecord]:
        return iter(self.papers)


class Clustering:
    """A total partition of mention ids into author-identity clusters."""

    def __init__(self, assignment: dict[str, str]):
        self._assignment = dict(assignment)

    @property
    def assignment(self) -> dict[str, str]:
        return dict(self._assignment)

    def cluster_of(self, mention_id: str) -> str:
        return self._assignment[mention_id]

    @cached_property
    def clusters(self) -> dict[str, tuple[str, ...]]:
        groups: dict[str, list[str]] = {}
        for mention_id, cluster_id in self._assignment.items():
            groups.setdefault(cluster_id, []).append(mention_id)
        return {cid: tuple(sorted(ms)) for cid, ms in groups.items()}

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    @cached_property
    def mention_ids(self) -> frozenset[str]:
        return frozenset(self._assignment)

    def __len__(self) -> int:
        return len(self._assignment)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return self._assignment == other._assignment

    def same_partition(self, other: "Clustering") -> bool:
        """Equality up to relabeling of cluster ids."""
        if self.mention_ids != other.mention_ids:
            return False
        mine = {frozenset(ms) for ms in self.clusters.values()}
        theirs = {frozenset(ms) for ms in other.clusters.values()}
        return mine == theirs


# ---------------------------------------------------------------------------
# corpus JSONL


def _mention_from_json(obj: dict, paper_id: str, index: int, line_no: int) -> AuthorMention:
    def need(fieldname: str) -> str:
        value = obj.get(fieldname)
        if not isinstance(value, str):
            raise CorpusFormatError(
                f"line {line_no}: author {index} of paper {paper_id!r}: "
                f"field {fieldname!r} missing or not a string"
            )
        return value

    surname = need("surname")
    given = need("given")
    given_full = obj.get("given_full")
    if given_full is not None and not isinstance(given_full, str):
        raise CorpusFormatError(
            f"line {line_no}: author {index}: field 'given_full' is not a string"
        )
    affils = obj.get("affiliations", [])
    if not isinstance(affils, list) or any(not isinstance(a, str) for a in affils):
        raise CorpusFormatError(
            f"line {line_no}: author {index}: field 'affiliations' must be a "
            "list of strings"
        )
    email = obj.get("email")
    if email is not None and not isinstance(email, str):
        raise CorpusFormatError(
            f"line {line_no}: author {index}: field 'email' is not a string"
        )
    if not surname.strip():
        raise CorpusFormatError(
            f"line {line_no}: author {index} of paper {paper_id!r}: "
            "field 'surname' is empty"
        )
    return AuthorMention(
        mention_id=f"{paper_id}:{index}",
        surname_raw=surname,
        given_raw=given,
        given_full_raw=given_full,
        affiliations=tuple(affils),
        email=email,
    )


def load_corpus(path: str | Path) -> Corpus:
    """Read a JSONL corpus file. Parse errors report the offending line."""
    papers: list[PaperRecord] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {line_no}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(f"line {line_no}: record is not an object")
            paper_id = obj.get("paper_id")
            if not isinstance(paper_id, str) or not paper_id:
                raise CorpusFormatError(
                    f"line {line_no}: field 'paper_id' missing or not a string"
                )
            if paper_id in seen_ids:
                raise CorpusFormatError(
                    f"line {line_no}: duplicate paper_id {paper_id!r}"
                )
            seen_ids.add(paper_id)
            year = obj.get("year")
            if year is not None and not isinstance(year, int):
                raise CorpusFormatError(f"line {line_no}: field 'year' is not an integer")
            venue = obj.get("venue")
            if venue is not None and not isinstance(venue, str):
                raise CorpusFormatError(f"line {line_no}: field 'venue' is not a string")
            authors_json = obj.get("authors")
            if not isinstance(authors_json, list) or not authors_json:
                raise CorpusFormatError(
                    f"line {line_no}: field 'authors' missing or empty"
                )
            authors = tuple(
                _mention_from_json(a, paper_id, i, line_no)
                for i, a in enumerate(authors_json)
            )
            papers.append(PaperRecord(paper_id, authors, year=year, venue=venue))
    return Corpus(papers)


def _mention_to_json(mention: AuthorMention) -> dict:
    obj: dict = {"surname": mention.surname_raw, "given": mention.given_raw}
    if mention.given_full_raw is not None:
        obj["given_full"] = mention.given_full_raw
    obj["affiliations"] = list(mention.affiliations)
    if mention.email is not None:
        obj["email"] = mention.email
    return obj


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write JSONL with a stable field order; equal corpora give equal bytes."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for paper in corpus.papers:
            obj: dict = {"paper_id": paper.paper_id}
            if paper.year is not None:
                obj["year"] = paper.year
            if paper.venue is not None:
                obj["venue"] = paper.venue
            obj["authors"] = [_mention_to_json(m) for m in paper.authors]
            fh.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


def filter_papers(corpus: Corpus) -> Corpus:
    """Drop single-author papers and papers with 100 or more authors."""
    kept = [p for p in corpus.papers if MIN_TEAM <= len(p.authors) <= MAX_TEAM]
    return Corpus(kept)


# ---------------------------------------------------------------------------
# label TSV


def read_labels(path: str | Path, corpus: Corpus | None = None) -> Clustering:
    """Read a mention->cluster TSV; with a corpus, enforce totality."""
    assignment: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise LabelFileError(
                    f"{path}: line {line_no}: expected 'mention_id<TAB>cluster_id'"
                )
            mention_id, cluster_id = parts
            if mention_id in assignment:
                raise LabelFileError(
                    f"{path}: line {line_no}: duplicate mention_id {mention_id!r}"
                )
            assignment[mention_id] = cluster_id
    if corpus is not None:
        unknown = sorted(set(assignment) - corpus.mention_ids)
        if unknown:
            raise LabelFileError(
                f"{path}: unknown mention ids: {', '.join(unknown[:10])}"
                + (" ..." if len(unknown) > 10 else "")
            )
        missing = sorted(corpus.mention_ids - set(assignment))
        if missing:
            raise LabelFileError(
                f"{path}: missing mentions: {', '.join(missing[:10])}"
                + (" ..." if len(missing) > 10 else "")
            )
    return Clustering(assignment)


def write_labels(clustering: Clustering, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for mention_id in sorted(clustering.mention_ids):
            fh.write(f"{mention_id}\t{clustering.cluster_of(mention_id)}\n")
