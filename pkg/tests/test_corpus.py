from idealtop.corpus import CorpusSpec, bounds, bounds_summary, chunks, instances, total_instances


def test_exhaustive_counts():
    assert total_instances(4, "principal") == 5680
    assert len(instances(CorpusSpec((3,)))) == 232
    assert bounds_summary(CorpusSpec((1, 2, 3, 4))) == "1×2, 4×4, 29×8, 355×16"


def test_sampling_is_seeded():
    spec = CorpusSpec((5,), sample=50, seed=3)
    first = instances(spec)
    assert first == instances(spec)
    assert len(first) == 50
    assert first != instances(CorpusSpec((5,), sample=50, seed=4))
    assert bounds(spec)[0]["exhaustive"] is False
    assert len(instances(CorpusSpec((5,), sample=50, exhaustive=True))) == total_instances(5, "principal")


def test_chunks_cover_in_order():
    items = list(range(23))
    parts = chunks(items, 5)
    assert [x for p in parts for x in p] == items
    assert len(parts) == 5
