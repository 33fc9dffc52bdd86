# Copyright 2026 The vqsdp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plot the mean optimality gap per shot group from a solve summary."""

import argparse
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("summary", type=Path, help="summary.json written by `vqsdp solve`")
    parser.add_argument("--out", type=Path, help="image path (default: next to the summary)")
    parser.add_argument("--log", action="store_true", help="logarithmic gap axis")
    args = parser.parse_args()

    summary = json.loads(args.summary.read_text())
    fig, ax = plt.subplots(figsize=(6, 4))
    for group in summary["groups"]:
        mean = group["gap_mean"]
        std = [math.sqrt(v) for v in group["gap_variance"]]
        k = range(1, len(mean) + 1)
        label = "exact" if group["shots"] == "exact" else f"{group['shots']} shots"
        (line,) = ax.plot(k, mean, label=label)
        lo = [max(m - s, 1e-12 if args.log else -math.inf) for m, s in zip(mean, std)]
        hi = [m + s for m, s in zip(mean, std)]
        ax.fill_between(k, lo, hi, color=line.get_color(), alpha=0.2)
    ax.set_xlabel("outer iteration")
    ax.set_ylabel("|objective - reference|")
    ax.set_title(f"{summary['instance']} / {summary['solver']}")
    if args.log:
        ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    out = args.out or args.summary.with_name("gap.png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
