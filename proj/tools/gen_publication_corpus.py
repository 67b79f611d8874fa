#!/usr/bin/env python3
"""Regenerates data/publications.jsonl, a small synthetic publication corpus.

Output is deterministic for a given seed.
"""
import argparse
import json
import random

KEYWORDS = [
    "hypergraph", "visualisation", "co-occurrence", "data mining", "faceted search",
    "knowledge discovery", "network analysis", "information retrieval", "clustering",
    "bibliometrics", "graph database", "ontology", "text mining", "visual analytics",
]
ORGANISATIONS = {
    "CERN": "Switzerland", "University of Geneva": "Switzerland", "EPFL": "Switzerland",
    "CNRS": "France", "Inria": "France", "MIT": "United States",
    "Stanford University": "United States", "University of Tokyo": "Japan",
    "TU Munich": "Germany", "Max Planck Society": "Germany",
}
SUBJECTS = [
    "Computer Science, Information Systems", "Computer Science, Theory & Methods",
    "Information Science & Library Science", "Mathematics, Applied",
    "Physics, Particles & Fields",
]
SURNAMES = ["Martin", "Dubois", "Keller", "Rossi", "Tanaka", "Smith", "Weber", "Moreau",
            "Fischer", "Suzuki", "Brown", "Bernard", "Huber", "Lopez", "Meyer"]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=20180101)
    parser.add_argument("--records", type=int, default=50)
    parser.add_argument("--out", default="data/publications.jsonl")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    orgs = sorted(ORGANISATIONS)
    with open(args.out, "w", encoding="utf-8") as out:
        for i in range(1, args.records + 1):
            ref = f"pub-{i:03d}"
            affiliations = rng.sample(orgs, rng.randint(1, 3))
            record = {
                "ref": ref,
                "attrs": {
                    "publication_id": [ref],
                    "title": [f"Study {i} of {rng.choice(KEYWORDS)} in {rng.choice(KEYWORDS)}"],
                    "author": sorted(rng.sample(SURNAMES, rng.randint(1, 4))),
                    "author_keyword": sorted(rng.sample(KEYWORDS, rng.randint(1, 4))),
                    "organisation": sorted(affiliations),
                    "country": sorted({ORGANISATIONS[o] for o in affiliations}),
                    "subject_category": sorted(rng.sample(SUBJECTS, rng.randint(1, 2))),
                },
            }
            out.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
