"""Command-line front end: reduce, trajectory, overlay, and sweep.

All output is machine readable and byte-deterministic: JSON records for
single frames, JSON-lines for trajectories, CSV for parameter sweeps.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np
from PIL import Image

from .layout import GridConfig, compute_chunk_layout
from .overlay import render_overlay
from .quadtree import SplitCriterion, partition_image
from .raster import build_sat, load_image, resize_to_block_multiple, to_grayscale
from .records import CONFIG_KEYS, build_record, canonical_json
from .reducer import QuadtreeTokenReducer
from .synth import DEFAULT_CORPUS_SEED, synth_screenshot
from .tokens import compression_report, select_tokens

DEFAULT_VARIANCE_ALPHAS = (1.0, 4.0, 8.0, 16.0, 32.0, 64.0)
DEFAULT_GRADIENT_ALPHAS = (10.0, 15.0, 30.0, 60.0, 120.0)
IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")

CSV_HEADER = "criterion,alpha,mean_compression_rate,mean_kept_tokens,images"


def _add_grid_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--patch-size", type=int, default=14, help="ViT patch side in pixels")
    p.add_argument("--merge-size", type=int, default=2, help="merged-token side in patches")
    p.add_argument(
        "--criterion",
        choices=("variance", "gradient"),
        default="variance",
        help="split score: area-weighted variance or max gradient",
    )
    p.add_argument("--alpha", type=float, default=8.0, help="split threshold knob")
    p.add_argument(
        "--no-resize",
        action="store_true",
        help="require block-aligned input instead of resizing",
    )


def _add_conditional_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-static", type=float, default=0.97)
    p.add_argument("--tau-shift", type=float, default=0.94)
    p.add_argument("--gamma", type=float, default=0.03)
    p.add_argument("--rho-min", type=float, default=0.5)
    p.add_argument("--d-max", type=int, default=4, help="max shift search radius in blocks")


def _reducer(args, conditional: bool) -> QuadtreeTokenReducer:
    return QuadtreeTokenReducer(
        patch_size=args.patch_size,
        merge_size=args.merge_size,
        criterion=args.criterion,
        alpha=args.alpha,
        resize=not args.no_resize,
        conditional=conditional,
        tau_static=getattr(args, "tau_static", 0.97),
        tau_shift=getattr(args, "tau_shift", 0.94),
        gamma=getattr(args, "gamma", 0.03),
        rho_min=getattr(args, "rho_min", 0.5),
        d_max=getattr(args, "d_max", 4),
    ).fit()


def _config_echo(reducer: QuadtreeTokenReducer) -> dict:
    params = reducer.get_params()
    return {key: params[key] for key in CONFIG_KEYS}


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _collect_images(path: Path) -> list[Path]:
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)
    return [path]


def cmd_reduce(args) -> int:
    reducer = _reducer(args, conditional=True)
    img = load_image(args.image)
    if args.prev:
        prev = load_image(args.prev)
        result = reducer.transform_frames([prev, img], conditional=True)[1]
    else:
        result = reducer.transform(img)
    record = build_record(result, _config_echo(reducer))
    _write_text(canonical_json(record) + "\n", args.out)
    return 0


def cmd_trajectory(args) -> int:
    reducer = _reducer(args, conditional=not args.no_conditional)
    paths: list[Path] = []
    for raw in args.frames:
        paths.extend(_collect_images(Path(raw)))
    if not paths:
        raise ValueError("no frames found")
    frames = []
    for path in paths:
        try:
            frames.append(load_image(path))
        except (OSError, ValueError) as exc:
            raise ValueError(f"frame {path}: {exc}") from exc
    results = reducer.transform_frames(frames, conditional=not args.no_conditional)
    config = _config_echo(reducer)
    lines = [
        canonical_json(build_record(result, config, frame_index=i)) + "\n"
        for i, result in enumerate(results)
    ]
    _write_text("".join(lines), args.out)
    return 0


def cmd_overlay(args) -> int:
    reducer = _reducer(args, conditional=True)
    img = load_image(args.image)
    if args.prev:
        prev = load_image(args.prev)
        result = reducer.transform_frames([prev, img], conditional=True)[1]
    else:
        result = reducer.transform(img)
    base = img if args.no_resize else resize_to_block_multiple(img, reducer.patch_size * reducer.merge_size)
    canvas = render_overlay(base, result)
    out = args.out or str(Path(args.image).with_suffix(".overlay.png"))
    Image.fromarray(canvas).save(out, format="PNG")
    return 0


def cmd_sweep(args) -> int:
    paths = _collect_images(Path(args.corpus))
    if not paths:
        raise ValueError(f"no images found in {args.corpus}")
    if args.alphas:
        alphas = sorted(float(a) for a in args.alphas.split(","))
    else:
        defaults = DEFAULT_VARIANCE_ALPHAS if args.criterion == "variance" else DEFAULT_GRADIENT_ALPHAS
        alphas = list(defaults)
    config = GridConfig(args.patch_size, args.merge_size)
    b = config.block_size

    # Decode and preprocess each image once; only the partition depends on alpha.
    prepared = []
    for path in paths:
        img = load_image(path)
        if not args.no_resize:
            img = resize_to_block_multiple(img, b)
        gray = to_grayscale(img)
        sat = build_sat(gray)
        layout = compute_chunk_layout(img.shape[1], img.shape[0], b)
        prepared.append((gray, sat, layout))

    lines = [CSV_HEADER + "\n"]
    for alpha in alphas:
        criterion = SplitCriterion(args.criterion, alpha)
        rates, kept = [], []
        for gray, sat, layout in prepared:
            partition = partition_image(gray, sat, layout, criterion, config)
            report = compression_report(select_tokens(partition))
            rates.append(report.compression_rate)
            kept.append(report.kept_tokens)
        lines.append(
            f"{args.criterion},{alpha:g},{np.mean(rates):.6f},{np.mean(kept):.6f},{len(paths)}\n"
        )
    _write_text("".join(lines), args.out)
    return 0


def cmd_make_corpus(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    for i in range(args.count):
        img = synth_screenshot(rng)
        Image.fromarray(img).save(out_dir / f"shot_{i:03d}.png", format="PNG")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadtok",
        description="Adaptive quadtree visual-token reduction for GUI screenshots",
    )
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="{reduce,trajectory,overlay,sweep}"
    )

    p = sub.add_parser("reduce", help="reduce one screenshot to a JSON record")
    p.add_argument("image", help="PNG or JPEG screenshot")
    _add_grid_options(p)
    _add_conditional_options(p)
    p.add_argument("--prev", help="previous frame for conditional refinement")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("trajectory", help="reduce an ordered frame sequence to JSON lines")
    p.add_argument("frames", nargs="+", help="frame paths in order, or a directory")
    _add_grid_options(p)
    _add_conditional_options(p)
    p.add_argument("--no-conditional", action="store_true", help="partition every frame independently")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("overlay", help="render the partition over the screenshot")
    p.add_argument("image")
    _add_grid_options(p)
    _add_conditional_options(p)
    p.add_argument("--prev", help="previous frame; tints chunks by mode")
    p.add_argument("--out", help="output PNG (default: <image>.overlay.png)")
    p.set_defaults(func=cmd_overlay)

    p = sub.add_parser("sweep", help="compression statistics across alpha values (CSV)")
    p.add_argument("corpus", help="image file or directory of images")
    _add_grid_options(p)
    p.add_argument("--alphas", help="comma-separated alpha list (default per criterion)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    # Undocumented helper: deterministic synthetic screenshots for tests/demos.
    p = sub.add_parser("make-corpus")
    p.add_argument("out_dir")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_CORPUS_SEED)
    p.set_defaults(func=cmd_make_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
