import random

from andnet.corpus import Corpus
from andnet.generator import SyntheticSpec, generate_synthetic
from andnet.ibd import ad_partition, fd_partition, hd_partition

from conftest import author, make_corpus


def same_cluster(clustering, a, b):
    return clustering.cluster_of(a) == clustering.cluster_of(b)


class TestFD:
    def test_merges_on_first_initial(self, renear_corpus):
        fd = fd_partition(renear_corpus)
        assert same_cluster(fd, "p0:0", "p1:0")  # A. H. with A. C.
        assert same_cluster(fd, "p0:0", "p2:0")  # A. H. with A.

    def test_different_first_initial_split(self, renear_corpus):
        fd = fd_partition(renear_corpus)
        assert not same_cluster(fd, "p2:0", "p3:0")  # A. vs B.

    def test_surname_must_match_exactly(self):
        corpus = make_corpus(
            [
                [author("Lee", "A."), author("X", "Q.")],
                [author("Leeb", "A."), author("Y", "Q.")],
            ]
        )
        fd = fd_partition(corpus)
        assert not same_cluster(fd, "p0:0", "p1:0")

    def test_empty_given_names_are_singletons(self):
        corpus = make_corpus(
            [
                [author("Lee", ""), author("X", "Q.")],
                [author("Lee", ""), author("Y", "Q.")],
            ]
        )
        for clustering in (fd_partition(corpus), ad_partition(corpus), hd_partition(corpus)):
            assert not same_cluster(clustering, "p0:0", "p1:0")


class TestAD:
    def test_splits_on_missing_middle_initial(self, renear_corpus):
        ad = ad_partition(renear_corpus)
        assert not same_cluster(ad, "p0:0", "p2:0")  # A. H. vs A.

    def test_splits_on_different_middle_initial(self, renear_corpus):
        ad = ad_partition(renear_corpus)
        assert not same_cluster(ad, "p0:0", "p1:0")  # A. H. vs A. C.

    def test_full_names_match_initial_signature(self):
        corpus = make_corpus(
            [
                [author("Renear", "A. H."), author("X", "Q.")],
                [author("Renear", "Allen Henry"), author("Y", "Q.")],
            ]
        )
        ad = ad_partition(corpus)
        assert same_cluster(ad, "p0:0", "p1:0")


class TestHD:
    def test_conflicting_extensions_split_everyone(self, renear_corpus):
        hd = hd_partition(renear_corpus)
        ids = ["p0:0", "p1:0", "p2:0"]  # A. H., A. C., A.
        clusters = {hd.cluster_of(m) for m in ids}
        assert len(clusters) == 3

    def test_unique_extension_absorbs_short_form(self):
        corpus = make_corpus(
            [
                [author("Renear", "A."), author("X", "Q.")],
                [author("Renear", "A. H."), author("Y", "Q.")],
            ]
        )
        hd = hd_partition(corpus)
        assert same_cluster(hd, "p0:0", "p1:0")

    def test_singleton_block(self):
        corpus = make_corpus([[author("Renear", "A. H."), author("X", "Q.")]])
        hd = hd_partition(corpus)
        assert hd.n_clusters == 2

    def test_three_level_chain(self):
        # [a] sees two extensions and stays alone; [a,h] has exactly one.
        corpus = make_corpus(
            [
                [author("Renear", "A."), author("X", "Q.")],
                [author("Renear", "A. H."), author("Y", "Q.")],
                [author("Renear", "A. H. C."), author("Z", "Q.")],
            ]
        )
        hd = hd_partition(corpus)
        assert not same_cluster(hd, "p0:0", "p1:0")
        assert same_cluster(hd, "p1:0", "p2:0")


def refines(fine, coarse):
    seen = {}
    for mention_id, cluster_id in fine.assignment.items():
        coarse_id = coarse.cluster_of(mention_id)
        if cluster_id in seen and seen[cluster_id] != coarse_id:
            return False
        seen[cluster_id] = coarse_id
    return True


class TestRefinementChain:
    def test_random_corpora(self):
        rng = random.Random(1234)
        for _ in range(12):
            spec = SyntheticSpec(
                n_authors=rng.randint(40, 160),
                n_papers=rng.randint(30, 120),
                collision_pool_share=rng.choice([0.0, 0.2, 0.5]),
                two_token_given_probability=rng.random(),
                middle_dropout_probability=rng.random(),
                full_given_name_probability=rng.random(),
                seed=rng.getrandbits(32),
            )
            corpus = generate_synthetic(spec).corpus
            fd, hd, ad = fd_partition(corpus), hd_partition(corpus), ad_partition(corpus)
            assert refines(ad, hd)
            assert refines(hd, fd)
            assert fd.n_clusters <= hd.n_clusters <= ad.n_clusters
            for clustering in (fd, hd, ad):
                assert clustering.mention_ids == corpus.mention_ids

    def test_invariant_to_paper_order(self):
        result = generate_synthetic(
            SyntheticSpec(n_authors=60, n_papers=40, seed=77, collision_pool_share=0.3)
        )
        reversed_corpus = Corpus(list(reversed(result.corpus.papers)))
        for fn in (fd_partition, ad_partition, hd_partition):
            assert fn(result.corpus).assignment == fn(reversed_corpus).assignment
