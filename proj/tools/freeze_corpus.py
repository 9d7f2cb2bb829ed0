#!/usr/bin/env python3
"""Replays the corpus with every heuristic and freezes the results.

Writes the heuristic=all category of each case into manifest.json and copies
acceptable.csv and categories.csv into data/corpus/expected/. The unit tests
check every frozen category against batch-parse facts before trusting it.

usage: freeze_corpus.py <autobox binary> [corpus dir]
"""
import csv
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile


def main(binary, corpus):
    corpus = pathlib.Path(corpus)
    manifest_path = corpus / "manifest.json"
    manifest = json.loads(manifest_path.read_text())
    for case in manifest:
        case.pop("expected", None)
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")

    with tempfile.TemporaryDirectory() as tmp:
        cmd = [binary, "run", "--tests", str(manifest_path), "--report-dir", tmp, "--no-fail"]
        for h in ("all", "parse_tree", "stack", "line"):
            cmd += ["--heuristic", h]
        subprocess.run(cmd, check=True, stdout=subprocess.DEVNULL)
        with open(pathlib.Path(tmp) / "outcomes.csv", newline="") as f:
            got = {r["test"]: r["category"] for r in csv.DictReader(f) if r["heuristic"] == "all"}
        expected = corpus / "expected"
        expected.mkdir(exist_ok=True)
        for name in ("acceptable.csv", "categories.csv"):
            shutil.copy(pathlib.Path(tmp) / name, expected / name)

    for case in manifest:
        case["expected"] = got[case["name"]]
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"froze {len(manifest)} categories")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else "data/corpus")
