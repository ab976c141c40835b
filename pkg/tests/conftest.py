import pytest

from andnet.corpus import AuthorMention, Corpus, PaperRecord


def author(surname, given, given_full=None, affiliations=(), email=None):
    return {
        "surname": surname,
        "given": given,
        "given_full": given_full,
        "affiliations": tuple(affiliations),
        "email": email,
    }


def make_corpus(papers):
    """papers: list of lists of author dicts (see `author`)."""
    records = []
    for p, byline in enumerate(papers):
        paper_id = f"p{p}"
        mentions = tuple(
            AuthorMention(
                mention_id=f"{paper_id}:{i}",
                surname_raw=a["surname"],
                given_raw=a["given"],
                given_full_raw=a.get("given_full"),
                affiliations=tuple(a.get("affiliations", ())),
                email=a.get("email"),
            )
            for i, a in enumerate(byline)
        )
        records.append(PaperRecord(paper_id, mentions))
    return Corpus(records)


@pytest.fixture
def renear_corpus():
    """Bylines carrying the classic first/middle-initial ambiguity."""
    return make_corpus(
        [
            [author("Renear", "A. H."), author("Filler", "Bo")],
            [author("Renear", "A. C."), author("Filler", "Cy")],
            [author("Renear", "A."), author("Filler", "Dee")],
            [author("Renear", "B."), author("Filler", "Ed")],
        ]
    )
