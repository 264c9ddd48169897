#!/usr/bin/env python3
"""Fetch and normalize the ten benchmark datasets into a data directory.

Three datasets (iris, wine, breast cancer) are written from the copies
bundled with scikit-learn and need no network.  The remaining seven are
downloaded from their standard public repositories and rewritten into the
comma-separated layouts the built-in manifests expect:

    haberman.csv        age, year, nodes, label(1/2)
    seeds.csv           7 features, label(1/2/3)
    statlog_heart.csv   13 features, label(1/2)
    ionosphere.csv      34 features, label(b/g)
    banknote.csv        4 features, label(0/1)
    penguin.csv         header: species,island,bill_length_mm,bill_depth_mm,
                        flipper_length_mm,body_mass_g,sex (missing cells empty)
    sonar.csv           60 features, label(M/R)

If a real WDBC export is reachable it replaces the scikit-learn variant so
that the id column carries the original identifiers.

Usage: python scripts/fetch_datasets.py [DATA_DIR]   (default: ./data)
"""

import csv
import sys
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
SOURCES = {
    "haberman.csv": f"{UCI}/haberman/haberman.data",
    "ionosphere.csv": f"{UCI}/ionosphere/ionosphere.data",
    "banknote.csv": f"{UCI}/00267/data_banknote_authentication.txt",
    "sonar.csv": f"{UCI}/undocumented/connectionist-bench/sonar/sonar.all-data",
    "wdbc.csv": f"{UCI}/breast-cancer-wisconsin/wdbc.data",
    # whitespace-separated sources, rewritten to commas below
    "seeds.csv": f"{UCI}/00236/seeds_dataset.txt",
    "statlog_heart.csv": f"{UCI}/statlog/heart/heart.dat",
    # seaborn's canonical penguins export (header + empty cells for missing)
    "penguin.csv": "https://raw.githubusercontent.com/mwaskom/seaborn-data/master/penguins.csv",
}
WHITESPACE_SEPARATED = {"seeds.csv", "statlog_heart.csv"}


def fetch(url: str) -> str:
    with urllib.request.urlopen(url, timeout=60) as response:
        return response.read().decode("utf-8")


def normalize(filename: str, raw: str) -> str:
    lines = [line.strip() for line in raw.splitlines() if line.strip()]
    if filename in WHITESPACE_SEPARATED:
        return "\n".join(",".join(line.split()) for line in lines) + "\n"
    if filename == "penguin.csv":
        # keep only the 7 documented columns (species..sex), drop any extras
        reader = list(csv.reader(lines))
        keep = [reader[0].index(c) for c in (
            "species", "island", "bill_length_mm", "bill_depth_mm",
            "flipper_length_mm", "body_mass_g", "sex")]
        return "\n".join(",".join(row[i] for i in keep) for row in reader) + "\n"
    return "\n".join(lines) + "\n"


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    out.mkdir(parents=True, exist_ok=True)

    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
    from autochaosnet.datasets import write_bundled_datasets

    written = write_bundled_datasets(out)
    print(f"wrote from scikit-learn: {', '.join(written)}")

    failures = []
    for filename, url in SOURCES.items():
        target = out / filename
        try:
            text = normalize(filename, fetch(url))
        except Exception as exc:
            print(f"SKIP {filename}: {exc}")
            failures.append(filename)
            continue
        target.write_text(text, encoding="utf-8")
        print(f"wrote {target}")
    if failures:
        print(f"{len(failures)} file(s) not fetched: {', '.join(failures)}")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
