"""Deterministic synthetic corpora for benchmarks and large-scale tests.

Titles are built from a small topical vocabulary so that a realistic
fraction of records lands on tree nodes while the rest goes to orphan
bins. Everything is driven by an explicit seed; the same (n, seed) pair
always yields byte-identical BibTeX.
"""

from __future__ import annotations

import random

# noun pools loosely clustered around the bundled tree's vocabulary
_TOPICS = [
    ["information", "storage", "retrieval", "indexing", "search"],
    ["data", "structures", "trees", "tables", "files"],
    ["probability", "statistics", "sampling", "estimation"],
    ["language", "processing", "parsing", "grammars", "translation"],
    ["image", "generation", "rendering", "pictures", "scenes"],
    ["hardware", "memory", "registers", "circuits", "logic"],
    ["computation", "automata", "machines", "complexity"],
    ["networks", "protocols", "routing", "congestion"],
    ["compilers", "optimization", "analysis", "transformations"],
    ["graphics", "shading", "textures", "meshes"],
]

_CONNECTORS = ["for", "with", "in", "over", "under", "using"]

_SURNAMES = [
    "Moreau", "Lefevre", "Okafor", "Tanaka", "Silva", "Novak",
    "Haddad", "Virtanen", "Kovacs", "Brandt", "Iyer", "Duarte",
]

_GIVEN = [
    "Ana", "Bruno", "Chen", "Dara", "Elif", "Farid",
    "Greta", "Hugo", "Ines", "Jonas", "Kaori", "Lena",
]

_VENUES = [
    "Journal of Systems Research",
    "Workshop on Applied Computing",
    "Symposium on Data Engineering",
    "Letters in Formal Methods",
    "Annals of Computing Practice",
]


def synthetic_records(n: int, seed: int = 0) -> list[dict]:
    """Return n record dicts with keys title/author/year/journal/key."""
    rng = random.Random(seed)
    records = []
    for i in range(n):
        topic = rng.choice(_TOPICS)
        head = rng.sample(topic, k=min(len(topic), rng.randint(2, 3)))
        tail_topic = rng.choice(_TOPICS)
        tail = rng.sample(tail_topic, k=min(len(tail_topic), rng.randint(1, 2)))
        title = " ".join(head) + f" {rng.choice(_CONNECTORS)} " + " ".join(tail)
        author_count = rng.randint(1, 3)
        authors = " and ".join(
            f"{rng.choice(_SURNAMES)}, {rng.choice(_GIVEN)}"
            for _ in range(author_count)
        )
        records.append(
            {
                "key": f"syn{seed}:{i:05d}",
                "title": title,
                "author": authors,
                "year": str(rng.randint(1988, 2006)),
                "journal": rng.choice(_VENUES),
            }
        )
    return records


def synthetic_bibtex(n: int, seed: int = 0) -> str:
    """Render synthetic_records(n, seed) as a BibTeX document."""
    chunks = []
    for rec in synthetic_records(n, seed):
        fields = "".join(
            f"  {name} = {{{rec[name]}}},\n"
            for name in ("title", "author", "year", "journal")
        )
        chunks.append(f"@article{{{rec['key']},\n{fields}}}\n")
    return "\n".join(chunks)


def query_pool(seed: int = 0, count: int = 100) -> list[str]:
    """Random multi-term queries drawn from the same vocabulary."""
    rng = random.Random(seed ^ 0x5EED)
    vocab = sorted({word for topic in _TOPICS for word in topic})
    queries = []
    for _ in range(count):
        k = rng.randint(1, 4)
        queries.append(" ".join(rng.sample(vocab, k)))
    return queries
