"""Command line interface.

Subcommands: embed (decide + coordinates), verify (exact isometry check of
a coordinate file), oracle (brute force up to 6 points), gen (seeded planted
instances).  Exit codes: 0 yes, 1 no, 2 error, so shell pipelines can
branch on the verdict.
"""

import argparse
import json
import sys
from pathlib import Path

from .metric import (
    MetricError,
    PlanePoint,
    format_scalar,
    l1_distance,
    parse_scalar,
    validate_metric,
    verify_isometric,
)
from .oracle import (
    NotAMetricAfterPerturbation,
    TooLarge,
    oracle_embed,
    perturb_instance,
    random_planar_instance,
)
from .planar import embed
from .svgout import render_svg


def read_instance(path):
    """Parse an instance file into a validated metric space.

    Line 1: the point count, optionally followed by the word "labeled";
    then one row of the distance matrix per line ("p/q" or decimal entries,
    each row prefixed with its label in labeled files).
    """
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise MetricError("empty instance file")
    head = lines[0].split()
    n = int(head[0])
    labeled = len(head) > 1 and head[1] == "labeled"
    if len(lines) != n + 1:
        raise MetricError(f"expected {n} matrix rows, found {len(lines) - 1}")
    labels = []
    rows = []
    for k, line in enumerate(lines[1:]):
        parts = line.split()
        if labeled:
            if not parts:
                raise MetricError(f"row {k} is missing its label")
            labels.append(parts[0])
            parts = parts[1:]
        if len(parts) != n:
            raise MetricError(f"row {k} has {len(parts)} entries, expected {n}")
        rows.append([parse_scalar(tok) for tok in parts])
    return validate_metric(rows, labels if labeled else None)


def write_instance(ms, path):
    lines = [str(ms.n)]
    for i in range(ms.n):
        lines.append(" ".join(format_scalar(v) for v in ms.row(i)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_coords(path):
    """Coordinate file: line 1 the point count, then "label x y" per line."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty coordinate file")
    n = int(lines[0].split()[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} coordinate rows, found {len(lines) - 1}")
    labels = []
    points = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"bad coordinate row: {line!r}")
        labels.append(parts[0])
        points.append(PlanePoint(parse_scalar(parts[1]), parse_scalar(parts[2])))
    return labels, points


def write_coords(labels, points, path):
    lines = [str(len(points))]
    for label, p in zip(labels, points):
        lines.append(f"{label} {format_scalar(p.x)} {format_scalar(p.y)}")
    Path(path).write_text("\n".join(lines) + "\n")


def result_document(ms, result):
    doc = {"embeddable": result.embeddable}
    if result.embeddable:
        doc["points"] = [
            {"label": label, "x": format_scalar(p.x), "y": format_scalar(p.y)}
            for label, p in zip(ms.labels, result.points)]
    else:
        doc["points"] = None
    doc["stats"] = {"n": result.n, "scenes_tried": result.scenes_tried,
                    "elapsed_ms": round(result.elapsed_ms, 3)}
    return doc


def _fail(message):
    print(message, file=sys.stderr)
    return 2


def _embed_one(instance, json_path=None, svg_path=None, quiet=False):
    try:
        ms = read_instance(instance)
    except (OSError, ValueError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")
    result = embed(ms)
    text = json.dumps(result_document(ms, result), indent=2)
    if not quiet:
        print(text)
    if json_path:
        Path(json_path).write_text(text + "\n")
    if svg_path and result.embeddable:
        Path(svg_path).write_text(render_svg(result.points, ms.labels))
    return 0 if result.embeddable else 1


def cmd_embed(args):
    if args.batch:
        if args.instance:
            return _fail("give either an instance file or --batch, not both")
        files = sorted(Path(args.batch).glob("*.txt"))
        if not files:
            return _fail(f"no *.txt instances under {args.batch}")
        worst = 0
        for path in files:
            code = _embed_one(path, json_path=path.with_suffix(".result.json"),
                              quiet=True)
            verdict = {0: "yes", 1: "no", 2: "error"}[code]
            print(f"{path.name}: {verdict}")
            worst = max(worst, 2 if code == 2 else 0)
        return worst
    if not args.instance:
        return _fail("missing instance file (or use --batch DIR)")
    return _embed_one(args.instance, json_path=args.json, svg_path=args.svg)


def cmd_verify(args):
    try:
        ms = read_instance(args.instance)
        labels, points = read_coords(args.coords)
    except (OSError, ValueError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")
    by_label = dict(zip(labels, points))
    if len(by_label) != len(labels) or sorted(labels) != sorted(ms.labels):
        return _fail("coordinate labels do not match the instance labels")
    ordered = [by_label[label] for label in ms.labels]
    ok, pair = verify_isometric(ordered, ms)
    if ok:
        print("isometric")
        return 0
    i, j = pair
    print(f"mismatch at ({ms.labels[i]}, {ms.labels[j]}): "
          f"metric {format_scalar(ms.d(i, j))}, "
          f"embedding {format_scalar(l1_distance(ordered[i], ordered[j]))}")
    return 1


def cmd_oracle(args):
    try:
        ms = read_instance(args.instance)
    except (OSError, ValueError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")
    try:
        verdict = oracle_embed(ms)
    except TooLarge as exc:
        return _fail(f"TooLarge: {exc}")
    print("yes" if verdict else "no")
    return 0 if verdict else 1


def cmd_gen(args):
    try:
        ms, points = random_planar_instance(args.n, args.seed, bound=args.bound)
    except ValueError as exc:
        return _fail(f"{type(exc).__name__}: {exc}")
    prefix = args.out or f"planted-n{args.n}-seed{args.seed}"
    coords = True
    if args.perturb:
        i, j, eps = args.perturb
        try:
            ms = perturb_instance(ms, (int(i), int(j)), parse_scalar(eps))
        except (NotAMetricAfterPerturbation, ValueError, IndexError) as exc:
            return _fail(f"{type(exc).__name__}: {exc}")
        coords = False  # planted coordinates no longer realize the matrix
    instance_path = Path(f"{prefix}.txt")
    write_instance(ms, instance_path)
    print(instance_path)
    if coords:
        coords_path = Path(f"{prefix}.coords.txt")
        write_coords(ms.labels, points, coords_path)
        print(coords_path)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rectiplane",
        description="Exact isometric embedding of finite metrics into the "
                    "rectilinear plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="decide embeddability, print coordinates")
    p.add_argument("instance", nargs="?", help="instance file")
    p.add_argument("--json", metavar="PATH", help="also write the JSON result here")
    p.add_argument("--svg", metavar="PATH",
                   help="write an SVG drawing here when embeddable")
    p.add_argument("--batch", metavar="DIR",
                   help="process every *.txt under DIR, writing *.result.json")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check a coordinate file exactly")
    p.add_argument("instance")
    p.add_argument("coords")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force verdict for n <= 6")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a seeded planted instance (+ coordinates)")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=parse_scalar, default=1000,
                   help="coordinates are drawn from [-bound, bound]")
    p.add_argument("--perturb", nargs=3, metavar=("I", "J", "EPS"),
                   help="add EPS to d(I,J) after generating")
    p.add_argument("--out", metavar="PREFIX", help="output file prefix")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
