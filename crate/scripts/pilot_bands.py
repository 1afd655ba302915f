#!/usr/bin/env python3
"""Recompute data/pilot_bands.json from pilot runs of the release binary.

Each pilot seed runs the full-size estimator (50 replicas, n = 10^6) for the
drift-area and zero-drift-area functionals; the band is the range of the
final merged maxima widened by a relative margin on each side.
"""
import argparse
import json
import pathlib
import subprocess
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent
RUNS = {
    "drift-area": ["--functional", "area", "--drift", "1,0", "--sigma", "I"],
    "zero-drift-area": ["--functional", "area", "--zero-drift", "--sigma", "I"],
}


def final_max(binary, args, seed, nmax, replicas, out):
    subprocess.run(
        [binary, "lil", *args, "--nmax", str(nmax), "--replicas", str(replicas),
         "--seed", str(seed), "--out-dir", str(out)],
        check=True, stdout=subprocess.DEVNULL,
    )
    summary = json.loads((out / "summary.json").read_text())
    return summary["merged_max_at"][-1]["value"]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--binary", default=str(ROOT / "target/release/hull-lil"))
    p.add_argument("--seeds", default="1001-1020")
    p.add_argument("--nmax", type=int, default=1_000_000)
    p.add_argument("--replicas", type=int, default=50)
    p.add_argument("--margin", type=float, default=0.10)
    p.add_argument("--out", default=str(ROOT / "data/pilot_bands.json"))
    a = p.parse_args()
    lo, hi = (int(x) for x in a.seeds.split("-"))
    seeds = list(range(lo, hi + 1))

    bands = {}
    with tempfile.TemporaryDirectory() as tmp:
        for name, args in RUNS.items():
            values = [final_max(a.binary, args, s, a.nmax, a.replicas, pathlib.Path(tmp) / name)
                      for s in seeds]
            bands[name] = {
                "pilot_values": values,
                "lower": min(values) * (1 - a.margin),
                "upper": max(values) * (1 + a.margin),
            }
            print(f"{name}: {min(values):.6f} .. {max(values):.6f}")
    doc = {
        "n_max": a.nmax,
        "replicas": a.replicas,
        "pilot_seeds": seeds,
        "margin": a.margin,
        "bands": bands,
    }
    out = pathlib.Path(a.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
