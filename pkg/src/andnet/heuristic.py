"""Heuristic disambiguation: candidate generation, scoring, clustering.

Candidate pairs are found by four string-matching steps (exact homonyms,
same-length initial-compatible names, subset names, and fuzzy variants:
spacing, nickname/partial, one-character, permuted tokens). Each candidate
pair is then scored on three kinds of evidence:

* coauthors: 1.0 per shared coauthor matched on full given names, 0.3 per
  coauthor matched only through initials, one-to-one greedy assignment;
* affiliations: shared non-stoplist words over the shorter word set, plus
  0.5 when both strings share a digit run of four or more characters,
  taking the best pair when a mention lists several affiliations;
* email: 1 when the local parts match, domain ignored.

The three parts are summed without weights. A sum above 0.50 (homonyms) or
0.75 (synonyms) is a match; sums in [0.40, threshold] are exported for
review and conservatively not merged. Homonym pairs that fail to match
become cannot-link constraints, and merging runs greedily from the
strongest evidence down, skipping (and logging) any merge that would put a
cannot-link pair into one cluster.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path

from .corpus import AuthorMention, Clustering, Corpus, affiliation_words
from .names import (
    NicknameTable,
    OriginList,
    ParsedName,
    TokenMatch,
    edit_distance_one,
    in_origin_list,
    initial_signature,
    nickname_match,
    parse_name,
    token_match,
)

HOMONYM_THRESHOLD = 0.50
SYNONYM_THRESHOLD = 0.75
REVIEW_FLOOR = 0.40

COAUTHOR_FULL_VALUE = 1.0
COAUTHOR_INITIAL_VALUE = 0.3
ZIP_BONUS = 0.5
MAX_PERMUTED_TOKENS = 6

_DIGIT_RUN_RE = re.compile(r"\d+")


class PairKind(enum.Enum):
    HOMONYM = "homonym"
    SYNONYM = "synonym"


@dataclass(frozen=True)
class CandidatePair:
    a: str
    b: str
    kind: PairKind
    step: int
    case: int | None = None


@dataclass(frozen=True)
class SimilarityProfile:
    coauthor_score: float
    affiliation_score: float
    email_score: int

    @property
    def total(self) -> float:
        return self.coauthor_score + self.affiliation_score + self.email_score


class Outcome(enum.Enum):
    MATCH = "match"
    NON_MATCH = "non_match"
    REVIEW = "review"


@dataclass(frozen=True)
class Decision:
    outcome: Outcome
    threshold_used: float


def decide(profile: SimilarityProfile, kind: PairKind) -> Decision:
    """Strictly-above-threshold match; [0.40, threshold] goes to review."""
    threshold = HOMONYM_THRESHOLD if kind is PairKind.HOMONYM else SYNONYM_THRESHOLD
    total = profile.total
    if total > threshold:
        return Decision(Outcome.MATCH, threshold)
    if total >= REVIEW_FLOOR:
        return Decision(Outcome.REVIEW, threshold)
    return Decision(Outcome.NON_MATCH, threshold)


# ---------------------------------------------------------------------------
# candidate generation

def effective_names(corpus: Corpus) -> dict[str, ParsedName]:
    """Parse the richest recorded form: full given names when provided."""
    out = {}
    for m in corpus.mentions:
        given = m.given_full_raw if m.given_full_raw else m.given_raw
        out[m.mention_id] = parse_name(m.surname_raw, given)
    return out


def _ordered(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def _cross_paper_pairs(corpus: Corpus, ids: list[str]):
    for a, b in combinations(ids, 2):
        if corpus.paper_of(a).paper_id == corpus.paper_of(b).paper_id:
            continue
        yield _ordered(a, b)


def step1_homonym_pairs(corpus: Corpus) -> list[CandidatePair]:
    """Pairs of mentions whose normalized names are identical token for token."""
    names = effective_names(corpus)
    blocks: dict[tuple, list[str]] = {}
    for mid, name in names.items():
        blocks.setdefault((name.surname_tokens, name.given_tokens), []).append(mid)
    pairs = []
    for ids in blocks.values():
        for a, b in _cross_paper_pairs(corpus, ids):
            pairs.append(CandidatePair(a, b, PairKind.HOMONYM, 1))
    return pairs


def _aligned_given(na: ParsedName, nb: ParsedName):
    k = min(len(na.given_tokens), len(nb.given_tokens))
    return zip(na.given_tokens[:k], nb.given_tokens[:k])


def _step2_match(na: ParsedName, nb: ParsedName) -> bool:
    if na.surname_tokens != nb.surname_tokens:
        return False
    if len(na.given_tokens) != len(nb.given_tokens) or not na.given_tokens:
        return False
    saw_initialized = False
    for ta, tb in zip(na.given_tokens, nb.given_tokens):
        match = token_match(ta, tb)
        if match is TokenMatch.NONE:
            return False
        if match is TokenMatch.INITIALIZED:
            saw_initialized = True
    return saw_initialized


def _step3_match(na: ParsedName, nb: ParsedName) -> bool:
    if na.surname_tokens != nb.surname_tokens:
        return False
    if len(na.given_tokens) == len(nb.given_tokens):
        return False
    if not na.given_tokens or not nb.given_tokens:
        return False
    return all(token_match(ta, tb) is not TokenMatch.NONE for ta, tb in _aligned_given(na, nb))


def _surname_blocks(names: dict[str, ParsedName]) -> dict[tuple[str, ...], list[str]]:
    blocks: dict[tuple[str, ...], list[str]] = {}
    for mid, name in names.items():
        blocks.setdefault(name.surname_tokens, []).append(mid)
    return blocks


def step2_equal_token_pairs(corpus: Corpus) -> list[CandidatePair]:
    """Same surname and given-token count, unmatched tokens all initial-compatible."""
    names = effective_names(corpus)
    pairs = []
    for ids in _surname_blocks(names).values():
        for a, b in _cross_paper_pairs(corpus, ids):
            if _step2_match(names[a], names[b]):
                pairs.append(CandidatePair(a, b, PairKind.SYNONYM, 2))
    return pairs


def step3_subset_pairs(corpus: Corpus) -> list[CandidatePair]:
    """Same surname, different token counts, shorter name fully covered."""
    names = effective_names(corpus)
    pairs = []
    for ids in _surname_blocks(names).values():
        for a, b in _cross_paper_pairs(corpus, ids):
            if _step3_match(names[a], names[b]):
                pairs.append(CandidatePair(a, b, PairKind.SYNONYM, 3))
    return pairs


def _case1_match(na: ParsedName, nb: ParsedName) -> bool:
    # Same characters, different spacing, in surname or given part.
    if na.surname_tokens == nb.surname_tokens and na.given_tokens == nb.given_tokens:
        return False
    return na.surname_joined == nb.surname_joined and na.given_joined == nb.given_joined


def _case2_match(na: ParsedName, nb: ParsedName, table: NicknameTable) -> bool:
    if na.surname_tokens != nb.surname_tokens:
        return False
    if not na.given_tokens or not nb.given_tokens:
        return False
    saw_nickname = False
    for ta, tb in _aligned_given(na, nb):
        if token_match(ta, tb) is not TokenMatch.NONE:
            continue
        if len(ta) > 1 and len(tb) > 1 and nickname_match(ta, tb, table):
            saw_nickname = True
            continue
        return False
    return saw_nickname


def _case3_match(na: ParsedName, nb: ParsedName, origins: OriginList) -> bool:
    if in_origin_list(na.surname_tokens, origins) or in_origin_list(nb.surname_tokens, origins):
        return False
    if len(na.surname_tokens) != len(nb.surname_tokens):
        return False
    if len(na.given_tokens) != len(nb.given_tokens):
        return False
    off_by_one = 0
    for ta, tb in zip(na.surname_tokens, nb.surname_tokens):
        if ta == tb:
            continue
        if len(ta) > 1 and len(tb) > 1 and edit_distance_one(ta, tb):
            off_by_one += 1
        else:
            return False
    for ta, tb in zip(na.given_tokens, nb.given_tokens):
        if token_match(ta, tb) is not TokenMatch.NONE:
            continue
        if len(ta) > 1 and len(tb) > 1 and edit_distance_one(ta, tb):
            off_by_one += 1
        else:
            return False
    return off_by_one == 1


def _bijective_token_match(ta: tuple[str, ...], tb: tuple[str, ...]) -> bool:
    if len(ta) != len(tb):
        return False

    used = [False] * len(tb)

    def assign(i: int) -> bool:
        if i == len(ta):
            return True
        for j in range(len(tb)):
            if not used[j] and token_match(ta[i], tb[j]) is not TokenMatch.NONE:
                used[j] = True
                if assign(i + 1):
                    return True
                used[j] = False
        return False

    return assign(0)


def _positionally_compatible(na: ParsedName, nb: ParsedName) -> bool:
    # Steps 1-3 territory: same surname, aligned given tokens all compatible.
    if na.surname_tokens != nb.surname_tokens:
        return False
    return all(token_match(ta, tb) is not TokenMatch.NONE for ta, tb in _aligned_given(na, nb))


def _case4_match(na: ParsedName, nb: ParsedName) -> bool:
    ta, tb = na.all_tokens(), nb.all_tokens()
    if len(ta) > MAX_PERMUTED_TOKENS or len(tb) > MAX_PERMUTED_TOKENS:
        return False
    if _positionally_compatible(na, nb):
        return False
    if _bijective_token_match(ta, tb):
        return True
    # Spacing differences combined with permutation: some ordering of each
    # side concatenates to the same string.
    if sorted("".join(ta)) != sorted("".join(tb)):
        return False
    joins_a = {"".join(p) for p in permutations(ta)}
    return any("".join(p) in joins_a for p in permutations(tb))


def step4_fuzzy_pairs(
    corpus: Corpus,
    nicknames: NicknameTable,
    origins: OriginList,
) -> list[CandidatePair]:
    """Fuzzy variants: spacing, nickname/partial, one character, permutation."""
    names = effective_names(corpus)
    found: dict[tuple[str, str], CandidatePair] = {}

    def add(a: str, b: str, case: int) -> None:
        found.setdefault((a, b), CandidatePair(a, b, PairKind.SYNONYM, 4, case))

    # Case 1: identical after removing spaces.
    joined_blocks: dict[tuple[str, str], list[str]] = {}
    for mid, name in names.items():
        joined_blocks.setdefault((name.surname_joined, name.given_joined), []).append(mid)
    for ids in joined_blocks.values():
        for a, b in _cross_paper_pairs(corpus, ids):
            if _case1_match(names[a], names[b]):
                add(a, b, 1)

    # Cases 2 and 3 (given-name side) share the exact-surname blocking.
    for ids in _surname_blocks(names).values():
        for a, b in _cross_paper_pairs(corpus, ids):
            if _case2_match(names[a], names[b], nicknames):
                add(a, b, 2)
            elif _case3_match(names[a], names[b], origins):
                add(a, b, 3)

    # Case 3 with the one-character difference in the surname: all given
    # tokens must then match, so first given initials agree across the pair.
    initial_blocks: dict[str, list[str]] = {}
    for mid, name in names.items():
        key = name.given_tokens[0][0] if name.given_tokens else ""
        initial_blocks.setdefault(key, []).append(mid)
    for ids in initial_blocks.values():
        for a, b in _cross_paper_pairs(corpus, ids):
            na, nb = names[a], names[b]
            if na.surname_tokens == nb.surname_tokens:
                continue
            if abs(len(na.surname_joined) - len(nb.surname_joined)) > 1:
                continue
            if _case3_match(na, nb, origins):
                add(a, b, 3)

    # Case 4: full/initial matching after permuting tokens across positions
    # and the surname/given boundary. Two blockings: a token bijection
    # preserves the multiset of token initials, a re-spacing permutation
    # preserves the character multiset.
    letter_blocks: dict[tuple[str, ...], list[str]] = {}
    char_blocks: dict[str, list[str]] = {}
    for mid, name in names.items():
        tokens = name.all_tokens()
        if len(tokens) > MAX_PERMUTED_TOKENS:
            continue
        letter_blocks.setdefault(tuple(sorted(t[0] for t in tokens)), []).append(mid)
        char_blocks.setdefault("".join(sorted("".join(tokens))), []).append(mid)
    case4_seen: set[tuple[str, str]] = set()
    for blocks in (letter_blocks, char_blocks):
        for ids in blocks.values():
            for a, b in _cross_paper_pairs(corpus, ids):
                if (a, b) in case4_seen:
                    continue
                case4_seen.add((a, b))
                if _case4_match(names[a], names[b]):
                    add(a, b, 4)

    return sorted(found.values(), key=lambda p: (p.a, p.b))


def candidate_pairs(
    corpus: Corpus,
    nicknames: NicknameTable,
    origins: OriginList,
) -> list[CandidatePair]:
    """All candidate pairs, deduplicated; the earliest step claims a pair."""
    found: dict[tuple[str, str], CandidatePair] = {}
    for step_pairs in (
        step1_homonym_pairs(corpus),
        step2_equal_token_pairs(corpus),
        step3_subset_pairs(corpus),
        step4_fuzzy_pairs(corpus, nicknames, origins),
    ):
        for pair in step_pairs:
            found.setdefault((pair.a, pair.b), pair)
    return sorted(found.values(), key=lambda p: (p.a, p.b))


# ---------------------------------------------------------------------------
# similarity scoring

def _digit_runs(text: str) -> set[str]:
    return {run for run in _DIGIT_RUN_RE.findall(text) if len(run) >= 4}


def _is_full_form(name: ParsedName) -> bool:
    return bool(name.given_tokens) and all(len(t) > 1 for t in name.given_tokens)


def coauthor_similarity(
    corpus: Corpus,
    a: str,
    b: str,
    names: dict[str, ParsedName] | None = None,
) -> float:
    """Greedy one-to-one coauthor matching, full matches before initialized."""
    if names is None:
        names = effective_names(corpus)
    paper_a = corpus.paper_of(a)
    paper_b = corpus.paper_of(b)
    side_a = [names[m.mention_id] for m in paper_a.authors if m.mention_id != a]
    side_b = [names[m.mention_id] for m in paper_b.authors if m.mention_id != b]
    used_b = [False] * len(side_b)
    matched_a = [False] * len(side_a)
    score = 0.0
    for i, name_a in enumerate(side_a):
        if not _is_full_form(name_a):
            continue
        for j, name_b in enumerate(side_b):
            if used_b[j] or not _is_full_form(name_b):
                continue
            if (
                name_a.surname_tokens == name_b.surname_tokens
                and name_a.given_tokens == name_b.given_tokens
            ):
                used_b[j] = True
                matched_a[i] = True
                score += COAUTHOR_FULL_VALUE
                break
    for i, name_a in enumerate(side_a):
        if matched_a[i]:
            continue
        for j, name_b in enumerate(side_b):
            if used_b[j]:
                continue
            if name_a.surname_tokens != name_b.surname_tokens:
                continue
            if initial_signature(name_a) != initial_signature(name_b):
                continue
            if not name_a.given_tokens:
                continue
            if _is_full_form(name_a) and _is_full_form(name_b):
                continue
            used_b[j] = True
            score += COAUTHOR_INITIAL_VALUE
            break
    return score


def affiliation_similarity(
    a: AuthorMention,
    b: AuthorMention,
    stoplist,
) -> float:
    """Best word-overlap ratio over all affiliation pairs, plus the zip bonus.

    Word counts use distinct non-stoplist words; the denominator is the
    shorter side. Missing affiliation information on either side scores 0.
    """
    if not a.affiliations or not b.affiliations:
        return 0.0
    stop = set(stoplist)
    best = 0.0
    for text_a in a.affiliations:
        words_a = {w for w in affiliation_words(text_a) if w not in stop}
        runs_a = _digit_runs(text_a)
        for text_b in b.affiliations:
            words_b = {w for w in affiliation_words(text_b) if w not in stop}
            shorter = min(len(words_a), len(words_b))
            score = len(words_a & words_b) / shorter if shorter else 0.0
            if runs_a & _digit_runs(text_b):
                score += ZIP_BONUS
            best = max(best, score)
    return best


def email_similarity(a: AuthorMention, b: AuthorMention) -> int:
    """1 when both local parts (before '@') match, case-insensitive."""
    if not a.email or not b.email:
        return 0
    local_a = a.email.split("@", 1)[0].lower()
    local_b = b.email.split("@", 1)[0].lower()
    return 1 if local_a and local_a == local_b else 0


def score_pair(
    corpus: Corpus,
    pair: CandidatePair,
    names: dict[str, ParsedName] | None = None,
) -> SimilarityProfile:
    mention_a = corpus.mention(pair.a)
    mention_b = corpus.mention(pair.b)
    return SimilarityProfile(
        coauthor_score=coauthor_similarity(corpus, pair.a, pair.b, names),
        affiliation_score=affiliation_similarity(
            mention_a, mention_b, corpus.affiliation_stoplist
        ),
        email_score=email_similarity(mention_a, mention_b),
    )


# ---------------------------------------------------------------------------
# clustering with cannot-link constraints

@dataclass(frozen=True)
class ScoredPair:
    a: str
    b: str
    kind: PairKind
    total: float


@dataclass(frozen=True)
class ClusterResult:
    clustering: Clustering
    review_pairs: tuple[ScoredPair, ...]
    blocked_merges: tuple[ScoredPair, ...]


def write_pairs_tsv(pairs, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in pairs:
            fh.write(f"{pair.a}\t{pair.b}\t{pair.kind.value}\t{pair.total!r}\n")


def cluster(
    corpus: Corpus,
    nicknames: NicknameTable | None = None,
    origins: OriginList | None = None,
) -> ClusterResult:
    """Score all candidates, then merge greedily under cannot-link constraints.

    Homonym pairs that do not clear their threshold become cannot-links.
    Match pairs are applied in descending score order (ties by mention id);
    a merge that would join a cannot-link pair is skipped and logged.
    """
    if nicknames is None:
        nicknames = NicknameTable.bundled()
    if origins is None:
        origins = OriginList()
    names = effective_names(corpus)

    review: list[ScoredPair] = []
    blocked: list[ScoredPair] = []
    matches: list[ScoredPair] = []
    cannot_link: list[tuple[str, str]] = []
    for pair in candidate_pairs(corpus, nicknames, origins):
        profile = score_pair(corpus, pair, names)
        decision = decide(profile, pair.kind)
        scored = ScoredPair(pair.a, pair.b, pair.kind, profile.total)
        if decision.outcome is Outcome.MATCH:
            matches.append(scored)
        else:
            if decision.outcome is Outcome.REVIEW:
                review.append(scored)
            if pair.kind is PairKind.HOMONYM:
                cannot_link.append((pair.a, pair.b))

    parent: dict[str, str] = {mid: mid for mid in corpus.mention_ids}
    members: dict[str, list[str]] = {mid: [mid] for mid in corpus.mention_ids}
    constraints: dict[str, set[str]] = {mid: set() for mid in corpus.mention_ids}
    for a, b in cannot_link:
        constraints[a].add(b)
        constraints[b].add(a)

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    matches.sort(key=lambda s: (-s.total, s.a, s.b))
    for scored in matches:
        ra, rb = find(scored.a), find(scored.b)
        if ra == rb:
            continue
        small, large = (ra, rb) if len(members[ra]) <= len(members[rb]) else (rb, ra)
        if any(mid in constraints[large] for mid in members[small]):
            blocked.append(scored)
            continue
        parent[small] = large
        members[large].extend(members[small])
        constraints[large] |= constraints[small]
        del members[small]
        del constraints[small]

    assignment: dict[str, str] = {}
    for root, group in members.items():
        cluster_id = min(group)
        for mid in group:
            assignment[mid] = cluster_id
    review.sort(key=lambda s: (s.a, s.b))
    blocked.sort(key=lambda s: (-s.total, s.a, s.b))
    return ClusterResult(Clustering(assignment), tuple(review), tuple(blocked))
