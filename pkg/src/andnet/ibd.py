"""Initial-based disambiguation baselines.

All three methods block on the exact normalized surname and differ only in
how much of the given-name initial sequence they require:

* first-initial merging: same surname + same first initial is one author,
  whatever the other initials say;
* all-initials merging: the whole initial sequence must be identical;
* hybrid: first-initial blocks, but a short form only absorbs into a longer
  form when the longer forms in the block are unambiguous; conflicting
  extensions split everyone apart.

Mentions with no given tokens are left as singletons by every method.
Cluster ids are the smallest mention id in a cluster, which makes the
output independent of paper and byline order.
"""

from __future__ import annotations

from .corpus import Clustering, Corpus
from .names import ParsedName, initial_signature, parse_name


def parsed_names(corpus: Corpus) -> dict[str, ParsedName]:
    """Parse every mention's recorded (initialized) name form once."""
    return {
        m.mention_id: parse_name(m.surname_raw, m.given_raw)
        for m in corpus.mentions
    }


def _clusters_from_groups(groups: list[list[str]]) -> Clustering:
    assignment: dict[str, str] = {}
    for group in groups:
        cluster_id = min(group)
        for mention_id in group:
            assignment[mention_id] = cluster_id
    return Clustering(assignment)


def _keyed_groups(corpus: Corpus, key_fn) -> list[list[str]]:
    groups: dict[object, list[str]] = {}
    names = parsed_names(corpus)
    for mention_id, name in names.items():
        if not name.given_tokens:
            # No usable given name: nothing to compare initials on.
            groups[("singleton", mention_id)] = [mention_id]
            continue
        groups.setdefault(key_fn(name), []).append(mention_id)
    return list(groups.values())


def fd_partition(corpus: Corpus) -> Clustering:
    """Merge on surname + first given-token initial."""
    return _clusters_from_groups(
        _keyed_groups(corpus, lambda n: (n.surname_joined, n.given_tokens[0][0]))
    )


def ad_partition(corpus: Corpus) -> Clustering:
    """Merge on surname + the full initial sequence."""
    return _clusters_from_groups(
        _keyed_groups(corpus, lambda n: (n.surname_joined, initial_signature(n)))
    )


def _is_proper_prefix(short: tuple[str, ...], long: tuple[str, ...]) -> bool:
    return len(short) < len(long) and long[: len(short)] == short


def hd_partition(corpus: Corpus) -> Clustering:
    """First-initial blocks with conflict-aware splitting.

    Within a block, identical initial sequences always merge. A sequence
    that is a proper prefix of longer sequences in the block merges with
    them only when there is exactly one distinct extension; two or more
    competing extensions leave the short form on its own.
    """
    names = parsed_names(corpus)
    fd_blocks: dict[object, dict[tuple[str, ...], list[str]]] = {}
    singletons: list[list[str]] = []
    for mention_id, name in names.items():
        if not name.given_tokens:
            singletons.append([mention_id])
            continue
        key = (name.surname_joined, name.given_tokens[0][0])
        fd_blocks.setdefault(key, {}).setdefault(initial_signature(name), []).append(
            mention_id
        )

    groups: list[list[str]] = list(singletons)
    for block in fd_blocks.values():
        signatures = sorted(block)
        parent = {sig: sig for sig in signatures}

        def find(sig):
            while parent[sig] != sig:
                parent[sig] = parent[parent[sig]]
                sig = parent[sig]
            return sig

        for sig in signatures:
            extensions = [t for t in signatures if _is_proper_prefix(sig, t)]
            if len(extensions) == 1:
                ra, rb = find(sig), find(extensions[0])
                if ra != rb:
                    parent[rb] = ra
        merged: dict[tuple[str, ...], list[str]] = {}
        for sig in signatures:
            merged.setdefault(find(sig), []).extend(block[sig])
        groups.extend(merged.values())
    return _clusters_from_groups(groups)
