import pytest

from autochaosnet.datasets import get_manifest, load_dataset, write_bundled_datasets

# Datasets whose canonical copies ship with scikit-learn; always available.
BUNDLED = ("iris", "wine", "breast_cancer")


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """Session data directory holding whichever raw files can be provided.

    The scikit-learn-bundled datasets are always written; the other seven
    require scripts/fetch_datasets.py (network) and tests using them skip
    when the files are absent.
    """
    d = tmp_path_factory.mktemp("data")
    write_bundled_datasets(d)
    return d


@pytest.fixture(scope="session")
def load_or_skip(data_dir):
    cache = {}

    def _load(dataset_id):
        if dataset_id not in cache:
            manifest = get_manifest(dataset_id)
            assert manifest is not None, f"no manifest for {dataset_id}"
            if not (data_dir / manifest.filename).is_file():
                pytest.skip(
                    f"{dataset_id}: raw file not supplied in this environment "
                    "(run scripts/fetch_datasets.py with network access)"
                )
            cache[dataset_id] = load_dataset(manifest, data_dir)
        return cache[dataset_id]

    return _load


@pytest.fixture
def cli_data_env(data_dir, monkeypatch):
    monkeypatch.setenv("AUTOCHAOSNET_DATA", str(data_dir))
    return data_dir
