"""Tokenization, stop-filtering and light stemming for English and French.

The pipeline is deliberately conservative: tokens are letter runs (hyphens,
slashes, digits and apostrophes all split), matching is case- and
accent-insensitive, and stemming only strips inflectional plural endings.
Aggressive stemmers conflate too much for label-sized inputs where two or
three lemmas carry the whole meaning.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Callable, Iterable

from .errors import ConfigError

LANGUAGES = ("en", "fr")

_TOKEN_RE = re.compile(r"[^\W\d_]+")

# NFKD leaves these ligatures intact, so expand them by hand.
_LIGATURES = (("œ", "oe"), ("æ", "ae"), ("ß", "ss"))


def fold(text: str) -> str:
    """Lowercase and strip diacritics ("é" -> "e", "œuvre" -> "oeuvre")."""
    # decompose before lowering: compatibility forms can hide capitals
    # ("𝕊" -> "S"), and lowering first would let those slip through
    text = unicodedata.normalize("NFKD", text).lower()
    for src, dst in _LIGATURES:
        if src in text:
            text = text.replace(src, dst)
    return "".join(ch for ch in text if not unicodedata.combining(ch))


def tokenize(text: str) -> list[str]:
    """Split into letter runs. "computer-aided" and "d'information" split."""
    return _TOKEN_RE.findall(text)


def stem_en_plural(token: str) -> str:
    """Plural stripping only: sses -> ss, ies -> i, trailing s dropped.

    Idempotent by construction (no output ends in a bare plural s).
    """
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith("ies"):
        return token[:-2]
    if token.endswith("ss"):
        return token
    if token.endswith("s") and len(token) > 1:
        return token[:-1]
    return token


def stem_fr_light(token: str) -> str:
    """French plural stripping: réseaux -> reseau, systèmes -> systeme."""
    if token.endswith(("aux", "eux")):
        return token[:-1]
    if token.endswith("s") and not token.endswith("ss") and len(token) > 1:
        return token[:-1]
    return token


def stem_none(token: str) -> str:
    return token


STEMMERS: dict[str, Callable[[str], str]] = {
    "plural": stem_en_plural,
    "light": stem_fr_light,
    "none": stem_none,
}


@dataclass(frozen=True)
class Lemma:
    surface: str
    normalized: str
    language: str


class StopList:
    """Case- and accent-insensitive membership test over a fixed word set."""

    def __init__(self, language: str, words: Iterable[str]):
        self.language = language
        self.entries = frozenset(fold(w) for w in words if w)

    def __contains__(self, token: str) -> bool:
        return fold(token) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_lines(cls, language: str, lines: Iterable[str]) -> "StopList":
        """One token per line; blank lines and # comments are skipped."""
        words = []
        for line in lines:
            word = line.split("#", 1)[0].strip()
            if word:
                words.append(word)
        return cls(language, words)


def _load_packaged_stoplist(language: str) -> StopList:
    path = resources.files("ontonav").joinpath(f"data/stopwords_{language}.txt")
    return StopList.from_lines(language, path.read_text(encoding="utf-8").splitlines())


class Pipeline:
    """Per-language analysis: tokenize, fold, stop-filter, stem."""

    def __init__(
        self,
        stoplists: dict[str, StopList] | None = None,
        stemmer_names: dict[str, str] | None = None,
    ):
        self.stoplists = stoplists or {
            lang: _load_packaged_stoplist(lang) for lang in LANGUAGES
        }
        names = stemmer_names or {"en": "plural", "fr": "light"}
        self.stemmers: dict[str, Callable[[str], str]] = {}
        for lang, name in names.items():
            if name not in STEMMERS:
                raise ConfigError(f"unknown stemmer variant {name!r} for {lang!r}")
            self.stemmers[lang] = STEMMERS[name]

    def _check_language(self, language: str) -> None:
        if language not in self.stoplists:
            raise ConfigError(f"unsupported language {language!r}")

    def analyze(self, text: str, language: str) -> list[Lemma]:
        """Ordered surviving lemmas for text. Pure; duplicates preserved."""
        self._check_language(language)
        stoplist = self.stoplists[language]
        stem = self.stemmers[language]
        out: list[Lemma] = []
        for token in tokenize(text):
            folded = fold(token)
            # Numeric-compatibility characters fold to digits; keep letters only.
            if not folded or not folded.isalpha() or folded in stoplist.entries:
                continue
            normalized = stem(folded)
            # A stem may land on a stop word; the output must stay clean.
            if not normalized or normalized in stoplist.entries:
                continue
            out.append(Lemma(surface=token, normalized=normalized, language=language))
        return out

    def lemma_set(self, text: str, language: str) -> frozenset[str]:
        return frozenset(l.normalized for l in self.analyze(text, language))

    def extract_native_keywords(self, label: str, language: str = "en") -> set[str]:
        """Lemma set for a node label. Empty results are the caller's problem."""
        return set(self.lemma_set(label, language))

    def normalize_token(self, token: str, language: str) -> str | None:
        """Single-keyword normalization; None unless exactly one lemma survives."""
        lemmas = self.analyze(token, language)
        if len(lemmas) != 1:
            return None
        return lemmas[0].normalized


@lru_cache(maxsize=1)
def default_pipeline() -> Pipeline:
    return Pipeline()


def cooccurrence_pairs(
    label_lemmas: dict[str, frozenset[str]],
    excluded: Callable[[str, str], bool],
    min_labels: int = 2,
    order_key: Callable[[str], object] = lambda c: c,
) -> dict[tuple[str, str], int]:
    """Weight node pairs by the lemma pairs their labels share.

    A lemma pair counts only when it appears in at least min_labels labels;
    node pairs for which excluded(a, b) holds are dropped. Returns
    {(a, b): weight} with a before b under order_key.
    """
    pair_nodes: dict[tuple[str, str], set[str]] = {}
    for code, lemmas in label_lemmas.items():
        for pair in combinations(sorted(lemmas), 2):
            pair_nodes.setdefault(pair, set()).add(code)
    weights: dict[tuple[str, str], int] = {}
    for nodes in pair_nodes.values():
        if len(nodes) < min_labels:
            continue
        for a, b in combinations(sorted(nodes, key=order_key), 2):
            if excluded(a, b):
                continue
            weights[(a, b)] = weights.get((a, b), 0) + 1
    return weights


def cooccurrence_links(taxonomy, min_labels: int = 2):
    """Derive label-cooccurrence proximity links and install them.

    Recomputation replaces the previous label-cooccurrence link set, so the
    pass is idempotent. Returns the fresh links.
    """
    from .taxonomy import code_key  # local import to avoid a cycle

    label_lemmas = {
        node.code: frozenset(node.native_lemmas()) for node in taxonomy.nodes.values()
    }
    weights = cooccurrence_pairs(
        label_lemmas,
        excluded=taxonomy.in_ancestry,
        min_labels=min_labels,
        order_key=code_key,
    )
    return taxonomy.replace_links("label-cooccurrence", weights)
