#!/usr/bin/env python3
"""Convert wiktextract JSONL (kaikki.org German extracts) into the anea KB dump.

Keeps only noun pages.  Sense glosses become definitions, their topic/category
tags become area titles, and the linkage sections map onto hypernyms and
hyponyms.  Everything else is dropped.

    python3 tools/wiktextract_to_dump.py kaikki-de.jsonl kb.jsonl
"""

from __future__ import annotations

import json
import sys


def convert_record(obj: dict) -> dict | None:
    if obj.get("pos") != "noun" or not obj.get("word"):
        return None
    senses = []
    for sense in obj.get("senses", []):
        glosses = sense.get("glosses") or sense.get("raw_glosses") or []
        if not glosses:
            continue
        areas = list(sense.get("topics", []))
        senses.append({"areas": areas, "definition": " ".join(glosses)})
    if not senses:
        return None

    def linkage(key: str) -> list[str]:
        return [entry["word"] for entry in obj.get(key, []) if entry.get("word")]

    return {
        "headword": obj["word"],
        "senses": senses,
        "hypernyms": linkage("hypernyms"),
        "hyponyms": linkage("hyponyms"),
    }


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    src, dst = sys.argv[1], sys.argv[2]
    kept = 0
    with open(src, encoding="utf-8") as fin, open(dst, "w", encoding="utf-8") as fout:
        for line in fin:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                continue
            record = convert_record(obj)
            if record is not None:
                fout.write(json.dumps(record, ensure_ascii=False) + "\n")
                kept += 1
    print(f"wrote {kept} noun pages to {dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
