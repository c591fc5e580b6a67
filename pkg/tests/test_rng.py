import numpy as np
import pytest

from scoresig import RngStream, derive_seed, derive_stream
from scoresig._parallel import chunk_sizes, ordered_map
from scoresig.errors import ConfigError, DomainError, ScoreSigError


def _draws(stream, k=100):
    return stream.generator().random(k)


def test_streams_differ_by_index():
    assert not np.array_equal(_draws(derive_stream(42, 0)), _draws(derive_stream(42, 1)))


def test_stream_is_reproducible():
    assert np.array_equal(_draws(derive_stream(42, 3)), _draws(derive_stream(42, 3)))


def test_first_draws_pairwise_distinct():
    seqs = [tuple(_draws(derive_stream(42, i))) for i in range(8)]
    assert len(set(seqs)) == 8
    # no stream is a shifted copy of another within the first 100 draws
    values = np.concatenate([np.array(s) for s in seqs])
    assert len(np.unique(values)) == values.size


def test_substream_nesting():
    root = RngStream(9)
    assert root.substream(2).substream(5).spawn_key == (0, 2, 5)
    assert derive_stream(9, 2).spawn_key == (2,)
    assert not np.array_equal(_draws(root.substream(0).substream(1)), _draws(root.substream(1).substream(0)))


def test_derive_seed_is_u64_and_stable():
    seed = derive_seed(7, 4)
    assert 0 <= seed < 2**64
    assert seed == derive_seed(7, 4) != derive_seed(7, 5)


@pytest.mark.parametrize("bad", [(-1, 0), (2**64, 0), (1, -2)])
def test_invalid_seeds(bad):
    with pytest.raises(ScoreSigError):
        derive_stream(*bad)


def test_chunk_sizes():
    assert chunk_sizes(250, 100) == [100, 100, 50]
    assert chunk_sizes(200, 100) == [100, 100]
    assert chunk_sizes(0, 100) == []


def test_ordered_map_preserves_order():
    items = list(range(20))
    assert ordered_map(lambda x: x * x, items, num_jobs=4) == [x * x for x in items]


def test_errors_are_value_errors():
    assert issubclass(DomainError, ValueError)
    assert issubclass(ConfigError, ScoreSigError)
