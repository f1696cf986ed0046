#!/usr/bin/env python3
"""Convert the 1998 ACM classification HTML listing into interchange JSON.

The listing publishes one line per class, e.g.::

    <li>H.3 INFORMATION STORAGE AND RETRIEVAL
    <li>H.3.1 Content Analysis and Indexing

Codes are dotted, labels follow on the same line. Lines whose label is
exactly "Miscellaneous" become miscellaneous-kind leaves; everything
else is a standard node. The root is synthesized since the listing has
none. Usage:

    python scripts/convert_ccs_html.py ccs98.html > taxonomy.json
"""

from __future__ import annotations

import json
import re
import sys
from html.parser import HTMLParser

_CODE_RE = re.compile(r"^([A-K](?:\.\d+)*)\.?\s+(.+)$")


class _TextLines(HTMLParser):
    """Flatten markup to text lines, one per list item or <br>."""

    def __init__(self):
        super().__init__()
        self.lines = [""]

    def handle_starttag(self, tag, attrs):
        if tag in ("li", "br", "p", "tr"):
            self.lines.append("")

    def handle_data(self, data):
        self.lines[-1] += data


def parse_listing(html: str) -> list[dict]:
    parser = _TextLines()
    parser.feed(html)
    entries = [{"code": "CS", "label_en": "computer science"}]
    seen = {"CS"}
    for raw in parser.lines:
        line = " ".join(raw.split())
        match = _CODE_RE.match(line)
        if not match:
            continue
        code, label = match.groups()
        if code in seen:
            continue
        seen.add(code)
        # the printed listing sets top and second level labels in caps
        label = label.strip().rstrip(".")
        entry = {"code": code, "label_en": label.lower()}
        if "." in code:
            entry["parent"] = code.rsplit(".", 1)[0]
        else:
            entry["parent"] = "CS"
        if label.lower() == "miscellaneous":
            entry["kind"] = "miscellaneous"
        entries.append(entry)
    return entries


def main(argv: list[str]) -> int:
    if len(argv) != 2:
        print(__doc__, file=sys.stderr)
        return 1
    html = open(argv[1], encoding="utf-8", errors="replace").read()
    entries = parse_listing(html)
    json.dump(entries, sys.stdout, indent=1, ensure_ascii=False)
    print()
    print(f"converted {len(entries)} nodes", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
