"""Independent reference implementations the suite checks against.

Each oracle is written the slow, obvious way, sharing no code with the
package internals it verifies. When an oracle and the engine disagree,
the engine is wrong until proven otherwise.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations


def linear_scan_search(records, analyze, query: str) -> list[tuple[str, int]]:
    """Full-scan ranking: (-distinct matched lemmas, -summed tf, key).

    records: iterable of objects with .key and .title
    analyze: fn(text) -> list of normalized lemma strings
    Returns [(key, matched_count)] for every record with at least one match.
    """
    query_lemmas = sorted(set(analyze(query)))
    scored = []
    for record in records:
        tf = Counter(analyze(record.title))
        matched = sum(1 for lemma in query_lemmas if tf[lemma] > 0)
        if matched == 0:
            continue
        total = sum(tf[lemma] for lemma in query_lemmas)
        scored.append((record.key, matched, total))
    scored.sort(key=lambda row: (-row[1], -row[2], row[0]))
    return [(key, matched) for key, matched, _ in scored]


def cooccurrence_weights(
    label_lemmas: dict[str, frozenset],
    is_ancestor_pair,
    min_labels: int,
    order_key,
) -> dict[tuple[str, str], int]:
    """Count, per node pair, the shared lemma pairs that clear min_labels."""
    codes = sorted(label_lemmas, key=order_key)
    weights: dict[tuple[str, str], int] = {}
    for i, a in enumerate(codes):
        for b in codes[i + 1 :]:
            if is_ancestor_pair(a, b):
                continue
            shared = label_lemmas[a] & label_lemmas[b]
            count = 0
            for pair in combinations(sorted(shared), 2):
                holders = sum(
                    1
                    for lemmas in label_lemmas.values()
                    if pair[0] in lemmas and pair[1] in lemmas
                )
                if holders >= min_labels:
                    count += 1
            if count:
                weights[(a, b)] = count
    return weights


class VoteOracle:
    """Tiny state machine mirroring the review rules.

    approve by the proposer is an error; anyone may reject. Two distinct
    approvals accept, two distinct rejections reject, first threshold
    wins. Votes on settled proposals and repeat votes are conflicts.
    """

    def __init__(self, proposer: str, approvals: int = 2, rejections: int = 2):
        self.proposer = proposer
        self.approvals_needed = approvals
        self.rejections_needed = rejections
        self.votes: dict[str, str] = {}
        self.status = "pending"
        self.mutations = 0

    def vote(self, member: str, verdict: str) -> str:
        """Returns 'ok', 'conflict' or 'rejected-vote'."""
        if self.status != "pending":
            return "conflict"
        if member in self.votes:
            return "conflict"
        if verdict == "approve" and member == self.proposer:
            return "rejected-vote"
        self.votes[member] = verdict
        approvals = sum(1 for v in self.votes.values() if v == "approve")
        rejections = sum(1 for v in self.votes.values() if v == "reject")
        if approvals >= self.approvals_needed:
            self.status = "accepted"
            self.mutations += 1
        elif rejections >= self.rejections_needed:
            self.status = "rejected"
        return "ok"


def round_half_away_reference(value: float) -> int:
    """Decimal-based half-away-from-zero rounding."""
    from decimal import Decimal, ROUND_HALF_UP

    return int(Decimal(str(value)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def natural_code_sort(codes: list[str]) -> list[str]:
    """Dotted-code ordering with numeric parts compared as integers."""

    def key(code: str):
        parts = []
        for part in code.split("."):
            if part.isdigit():
                parts.append((0, int(part), ""))
            else:
                parts.append((1, 0, part))
        return parts

    return sorted(codes, key=key)
