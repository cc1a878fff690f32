"""Command-line entry point: cluster an image or Lab CSV and write a report."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import baselines, kernels
from .clustering import ClusterConfig, cluster, harden, update_memberships
from .datasets import Dataset, emit_segmentation, load_dataset
from .fuzzy_color import default_palette, load_palette, nearest_reference
from .report import CentroidEntry, RunReport

log = logging.getLogger("fuzzycolor")

ALGORITHMS = ("fuzzy-color", "kmeans", "fcm")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fuzzycolor",
        description="Cluster color data with fuzzy color balls on CIELAB (or a baseline).",
    )
    p.add_argument("--input", required=True, type=Path, help="png, ppm (P6) or csv of L,a,b rows")
    p.add_argument("--clusters", required=True, type=int, help="number of clusters c")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="fuzzy-color")
    p.add_argument("--palette", type=Path, help="reference palette JSON (default: built-in)")
    p.add_argument("--epsilon", type=_positive_float, default=1e-4)
    p.add_argument("--max-iter", type=_positive_int, default=100)
    p.add_argument("--fuzzifier", type=float, default=2.0, help="fcm only")
    p.add_argument("--restarts", type=_positive_int, default=10, help="kmeans only: seeded starts, best error kept")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subsample", type=_positive_int, help="cluster every Nth element only")
    p.add_argument("--out", type=Path, help="segmented PNG (image inputs only)")
    p.add_argument("--report", type=Path, help="JSON run report")
    p.add_argument(
        "--compat-literal-containment",
        action="store_true",
        help="treat delta <= jnd (two JNDs from center) as inside a ball",
    )
    p.add_argument(
        "--centroid-exponent",
        type=float,
        default=2.0,
        help="membership exponent in the fuzzy-color centroid mean (1 = plain weighted mean)",
    )
    p.add_argument("--reseed-empty", action="store_true", help="reseed empty fuzzy clusters instead of failing")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def _nearest_center(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = X[None, :, :] - centers[:, None, :]
    return np.argmin(np.einsum("cnk,cnk->cn", diff, diff), axis=0)


def _execute(args, dataset: Dataset, palette):
    X = dataset.lab[:: args.subsample] if args.subsample else dataset.lab
    c = args.clusters
    extra: dict = {}
    if args.algorithm == "fuzzy-color":
        config = ClusterConfig(
            c=c,
            epsilon=args.epsilon,
            max_iterations=args.max_iter,
            palette=palette,
            seed=args.seed,
            literal_containment=args.compat_literal_containment,
            reseed_empty=args.reseed_empty,
            centroid_exponent=args.centroid_exponent,
        )
        res = cluster(X, config)
        centers, jnds = res.centers, res.jnds.tolist()
        labels = res.labels
        if args.subsample:
            labels = harden(update_memberships(res.centroids, dataset.lab, config.literal_containment))
        history = res.j_history
        extra = {
            "j_clamped_history": res.j_clamped_history,
            "seeded_centroids": res.seeded_centroids,
            "reseeded": [list(r) for r in res.reseeded],
        }
    elif args.algorithm == "kmeans":
        res = baselines.kmeans(X, c, seed=args.seed, max_iterations=args.max_iter, restarts=args.restarts)
        centers, jnds, labels, history = res.centers, [None] * c, res.labels, res.sse_history
    else:
        res = baselines.fcm(
            X, c, m=args.fuzzifier, seed=args.seed, epsilon=args.epsilon, max_iterations=args.max_iter
        )
        centers, jnds, labels, history = res.centers, [None] * c, res.labels, res.j_history
    if args.subsample and args.algorithm != "fuzzy-color":
        labels = _nearest_center(dataset.lab, centers)
    return res, centers, jnds, labels, history, extra


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(name)s: %(levelname)s: %(message)s",
    )
    if args.algorithm == "fuzzy-color" and args.clusters < 2:
        parser.error("--clusters must be >= 2 for fuzzy-color (relative membership needs two colors)")
    if args.clusters < 1:
        parser.error("--clusters must be >= 1")
    if args.algorithm == "fcm" and not args.fuzzifier > 1:
        parser.error("--fuzzifier must be > 1")

    started = time.perf_counter()
    try:
        palette = load_palette(args.palette) if args.palette else default_palette()
        dataset = load_dataset(args.input)
        if args.out and not dataset.has_geometry:
            raise ValueError(f"{args.input}: --out needs an image input")
        res, centers, jnds, labels, history, extra = _execute(args, dataset, palette)
        if args.out:
            emit_segmentation(SimpleNamespace(labels=labels, centers=centers), dataset, args.out)
        report = RunReport(
            algorithm=args.algorithm,
            config={
                "clusters": args.clusters,
                "epsilon": args.epsilon,
                "max_iter": args.max_iter,
                "fuzzifier": args.fuzzifier if args.algorithm == "fcm" else None,
                "restarts": args.restarts if args.algorithm == "kmeans" else None,
                "seed": args.seed,
                "subsample": args.subsample,
                "palette": str(args.palette) if args.palette else "built-in",
                "literal_containment": args.compat_literal_containment,
                "reseed_empty": args.reseed_empty,
                "centroid_exponent": args.centroid_exponent if args.algorithm == "fuzzy-color" else None,
            },
            input={
                "path": str(args.input),
                "elements": len(dataset),
                "clustered_elements": len(dataset.lab[:: args.subsample or 1]),
                "width": dataset.width,
                "height": dataset.height,
            },
            iterations=res.iterations,
            converged=res.converged,
            j_history=[float(v) for v in history],
            centroids=[
                CentroidEntry(
                    L=float(ctr[0]),
                    a=float(ctr[1]),
                    b=float(ctr[2]),
                    jnd=jnd,
                    nearest_reference=palette[nearest_reference(palette, ctr)].name,
                )
                for ctr, jnd in zip(np.asarray(centers), jnds)
            ],
            cluster_counts=np.bincount(labels, minlength=args.clusters).tolist(),
            kernel_backend=kernels.BACKEND,
            duration_seconds=time.perf_counter() - started,
            **extra,
        )
        if args.report:
            args.report.write_text(report.dumps(), encoding="utf-8")
        else:
            sys.stdout.write(report.dumps())
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"fuzzycolor: error: [{type(exc).__module__}] {exc}", file=sys.stderr)
        return 1
    log.info("done in %.3fs", time.perf_counter() - started)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
