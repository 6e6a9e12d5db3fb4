#!/usr/bin/env python3
"""Pull best-known values out of tab-separated benchmark tables in a markdown
file into data/reference/best_known.csv.

usage: extract_reference.py TABLES.md [OUT.csv]
"""
import csv
import re
import sys

ROW = re.compile(r"^(?:C|R|RC)\d{3}_(?:30|50|100)\t")


def cell(text):
    text = re.sub(r"<[^>]+>", "", text).strip().strip("*_")
    return text


def main(argv):
    if len(argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    out_path = argv[2] if len(argv) > 2 else "data/reference/best_known.csv"
    rows = {}
    with open(argv[1], encoding="utf-8") as f:
        for line in f:
            if not ROW.match(line):
                continue
            fields = [cell(c) for c in line.rstrip("\n").split("\t")]
            name, best, a0, unvisited = fields[0], fields[1], fields[2], fields[3]
            if name in rows:
                continue
            rows[name] = (best if best != "NA" else "NA", a0, unvisited)
    with open(out_path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["instance", "best_known", "a0_best", "a0_unvisited"])
        for name in sorted(rows, key=lambda n: (int(n.split("_")[1]), n)):
            w.writerow([name, *rows[name]])
    print(f"{len(rows)} instances -> {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
