#!/usr/bin/env python3
"""Build a demo campaign directory and serve it for human workers.

Generates cluster tasks (plus a few pair tasks) from the demo catalog, adds a
qualification test, and starts the task service. Point a browser at the
printed URL; the web UI must have been built first (see frontend/README.md).
"""

import argparse
import json
from pathlib import Path

import uvicorn

from crowder import storage
from crowder.fixtures import demo_records, write_demo_csv
from crowder.generators import PairHit, pair_based
from crowder.service import create_app
from crowder.similarity import PruneConfig, generate_candidates
from crowder.two_tiered import two_tiered

QUALIFICATION = {
    "pairs": [
        {
            "a": {"id": "q1", "attributes": [["name", "panasonic lumix dmc fz35 camera"], ["price", "399"]]},
            "b": {"id": "q2", "attributes": [["name", "lumix dmc fz35 digital camera by panasonic"], ["price", "389"]]},
            "match": True,
        },
        {
            "a": {"id": "q3", "attributes": [["name", "canon powershot sx20 black"], ["price", "350"]]},
            "b": {"id": "q4", "attributes": [["name", "canon pixma mp560 printer"], ["price", "99"]]},
            "match": False,
        },
        {
            "a": {"id": "q5", "attributes": [["name", "sony bravia 40 inch lcd tv"], ["price", "799"]]},
            "b": {"id": "q6", "attributes": [["name", "sony bravia 46 inch lcd tv"], ["price", "999"]]},
            "match": False,
        },
    ]
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=Path("out/campaign"))
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--cluster-size", type=int, default=4)
    parser.add_argument("--replicas", type=int, default=3)
    parser.add_argument("--qualification", action="store_true")
    parser.add_argument("--ui-dir", type=Path, default=None)
    args = parser.parse_args()

    args.data_dir.mkdir(parents=True, exist_ok=True)
    pairs = generate_candidates(demo_records(), PruneConfig(0.3))
    cluster_hits = two_tiered(pairs, args.cluster_size)
    pair_hits = [
        PairHit(id=f"hit-1{i:03d}", pairs=h.pairs)
        for i, h in enumerate(pair_based(pairs[:4], 2), start=1)
    ]
    storage.write_hits([*cluster_hits, *pair_hits], args.data_dir / "hits.jsonl")
    write_demo_csv(args.data_dir / "records.csv", with_price=True)
    if args.qualification:
        (args.data_dir / "qualification.json").write_text(json.dumps(QUALIFICATION, indent=2))

    app = create_app(args.data_dir, replicas=args.replicas, ui_dir=args.ui_dir)
    print(f"campaign dir: {args.data_dir}")
    print(f"serving on http://127.0.0.1:{args.port}")
    uvicorn.run(app, host="127.0.0.1", port=args.port)


if __name__ == "__main__":
    main()
