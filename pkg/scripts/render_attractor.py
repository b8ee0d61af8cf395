"""Render the chaos-game attractor of the built-in fern model to a PGM.

Also prints how often each affine map fired against its nominal probability,
a quick sanity check on the weighted selection.

Usage: python scripts/render_attractor.py out.pgm [--points 200000]
"""

import argparse

import numpy as np

from wavekit import barnsley_tree_model, chaos_game
from wavekit.io import points_to_image, write_pgm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", help="output PGM path")
    ap.add_argument("--points", type=int, default=200000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--width", type=int, default=512)
    ap.add_argument("--height", type=int, default=768)
    args = ap.parse_args()

    model = barnsley_tree_model()
    cloud = chaos_game(model, n=args.points, seed=args.seed)
    freq = cloud.map_counts / cloud.points.shape[0]

    print(f"{'map':>4} {'prob':>6} {'observed':>9}")
    for k, (p, q) in enumerate(zip(model.probabilities, freq)):
        print(f"{k:4d} {p:6.3f} {q:9.4f}")

    lo = cloud.points.min(axis=0)
    hi = cloud.points.max(axis=0)
    print(f"extent: x [{lo[0]:.3f}, {hi[0]:.3f}]  "
          f"y [{lo[1]:.3f}, {hi[1]:.3f}]")

    img = points_to_image(cloud.points, args.width, args.height)
    write_pgm(args.out, img)
    occupied = np.count_nonzero(img) / img.size
    print(f"wrote {args.out} ({args.width}x{args.height}, "
          f"{occupied:.1%} of pixels occupied)")


if __name__ == "__main__":
    main()
