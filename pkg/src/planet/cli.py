"""Command-line entry point.

Every command writes CSV files plus ``manifest.json`` into ``--out``.
``planet replay DIR/manifest.json`` re-runs a recorded command.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import logging
import sys
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .analysis import control_experiment, correlation_matrix
from .core import BipartiteNetwork, PlanetError, consonant_degrees, cumulate, empirical_distribution
from .fit import GridSpec, fit_dataset
from .fixture import FAMILY_AGES, FIXTURE_SEED, write_fixture
from .growth import UPDATE_MODES, GrowthConfig, ensemble_distribution, simulate
from .ingest import DEFAULT_REGISTRY_SIZE, merge_families, parse_inventories, select_family, write_atomic

log = logging.getLogger("planet")

FAMILY_SIZES = (19, 17, 30, 12, 9)


@dataclass
class RunManifest:
    command: str
    input: str | None
    registry_size: int | None
    grid: str | None
    seed: int | None
    version: str = __version__
    timestamp: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat())
    argv: list[str] = field(default_factory=list)


def fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path: Path, header, rows) -> None:
    write_atomic(path, csv_text(header, rows))


def write_manifest(out: Path, manifest: RunManifest) -> None:
    write_atomic(out / "manifest.json", json.dumps(asdict(manifest), indent=2, ensure_ascii=False) + "\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _grid(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except PlanetError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _safe_name(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_+." else "_" for ch in name)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _selected(datasets, spec: str):
    if spec == "all":
        return list(datasets)
    return [select_family(datasets, name.strip()) for name in spec.split(",")]


def cmd_fit(args) -> int:
    _, datasets = parse_inventories(args.input)
    out = _out_dir(args)
    if args.combined:
        chosen = _selected(datasets, args.combined)
        name = "Combined" if args.combined == "all" else "+".join(ds.name for ds in chosen)
        targets = [merge_families(chosen, name)]
    else:
        targets = _selected(datasets, args.family)

    rows = []
    ages = []
    for ds in targets:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            res = fit_dataset(ds, args.grid, args.registry_size, args.target)
        for w in caught:
            log.warning("%s: %s", ds.name, w.message)
        net = BipartiteNetwork.from_dataset(ds)
        n_consonants = len(consonant_degrees(net))
        rows.append((ds.name, len(ds), n_consonants, ds.edge_count, ds.mean_inventory_size,
                     res.epsilon_star, res.lse_star))
        model = res.curve.as_dict()
        write_csv(
            out / f"curve_{_safe_name(ds.name)}.csv",
            ("k", "empirical", "model"),
            [(k, v, model[k]) for k, v in zip(res.empirical.support, res.empirical.values)],
        )
        write_csv(out / f"trace_{_safe_name(ds.name)}.csv", ("epsilon", "lse"), res.trace)
        if ds.name in FAMILY_AGES:
            ages.append((ds.name, FAMILY_AGES[ds.name], res.epsilon_star))

    header = ("family", "languages", "consonants", "edges", "mu", "epsilon", "lse")
    write_csv(out / "summary.csv", header, rows)
    if ages:
        write_csv(out / "ages.csv", ("family", "age_years", "epsilon"), ages)
    sys.stdout.write(csv_text(header, rows))
    return 0


def _degrees_source(args):
    if args.degrees:
        seq = args.degrees
        return seq, None
    path, _, family = args.degrees_from.rpartition(":")
    if not path:
        path, family = args.degrees_from, ""
    _, datasets = parse_inventories(path)
    if family:
        ds = select_family(datasets, family)
    else:
        ds = merge_families(datasets, "all")
    return ds.degree_sequence, ds.language_ids


def cmd_simulate(args) -> int:
    degrees, ids = _degrees_source(args)
    config = GrowthConfig(args.epsilon, tuple(degrees), args.registry_size, args.seed,
                          tuple(ids) if ids else None, args.update)
    out = _out_dir(args)
    if args.runs == 1 or args.edges:
        for i in range(args.runs):
            net = simulate(config.with_seed(args.seed + i))
            name = "edges.csv" if args.runs == 1 else f"edges_seed{args.seed + i}.csv"
            write_csv(out / name, ("language_id", "consonant_index"), net.edges())
    if args.runs == 1:
        dist = empirical_distribution(consonant_degrees(net))
    else:
        dist = ensemble_distribution(config, args.runs)
    tail = cumulate(dist)
    rows = list(zip(dist.support, dist.mass, tail.tail))
    write_csv(out / "distribution.csv", ("k", "p_k", "P_k"), rows)
    sys.stdout.write(f"languages={len(degrees)} edges={sum(degrees)} runs={args.runs}\n")
    return 0


def cmd_correlate(args) -> int:
    _, datasets = parse_inventories(args.input)
    datasets = _selected(datasets, args.family)
    m = correlation_matrix(datasets)
    names = [ds.name for ds in datasets]
    rows = [[name] + [float(v) for v in m[i]] for i, name in enumerate(names)]
    out = _out_dir(args)
    write_csv(out / "correlation.csv", ["family"] + names, rows)
    sys.stdout.write(csv_text(["family"] + names, rows))
    return 0


def cmd_control(args) -> int:
    _, datasets = parse_inventories(args.input)
    pool = merge_families(_selected(datasets, args.pool), "pool")
    sizes = args.sizes or list(FAMILY_SIZES)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = control_experiment(pool, sizes, args.trials, args.grid, args.seed, args.registry_size, args.target)
    if caught:
        log.warning("%d pseudo-family fits clamped k=t onto t-1", len(caught))
    out = _out_dir(args)
    write_csv(
        out / "control.csv",
        ("trial", "size", "epsilon", "lse"),
        [(r.trial, r.size, r.epsilon_star, r.lse_star) for r in res.trials],
    )
    write_csv(out / "control_summary.csv", ("fits", "mean_epsilon"), [(len(res.trials), res.mean_epsilon)])
    sys.stdout.write(f"mean_epsilon={fmt(res.mean_epsilon)} fits={len(res.trials)}\n")
    return 0


def cmd_fixture(args) -> int:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_fixture(out, args.seed)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planet", description="Grow, fit and compare phoneme-language networks.")
    parser.add_argument("--version", action="version", version=f"planet {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_default=0):
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--registry-size", type=_positive_int, default=DEFAULT_REGISTRY_SIZE,
                       help="consonant registry size N (default: 541)")
        p.add_argument("--seed", type=int, default=seed_default)

    def fitting(p):
        p.add_argument("--grid", type=_grid, default=GridSpec(), help="MIN:MAX:STEP (default 0.005:1:0.005)")
        p.add_argument("--target", choices=("cdf", "pdf"), default="cdf")

    p = sub.add_parser("fit", help="fit epsilon to families in an inventory file")
    p.add_argument("--input", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--family", default="all", help="NAME[,NAME...] or all (default)")
    group.add_argument("--combined", help="merge NAME,NAME,... (or all) into one network and fit it")
    common(p)
    fitting(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("simulate", help="grow synthetic networks")
    p.add_argument("--epsilon", type=float, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--degrees-from", help="PATH[:FAMILY]; inventory sizes taken from the file")
    src.add_argument("--degrees", type=_int_list, help="comma-separated inventory sizes")
    p.add_argument("--runs", type=_positive_int, default=1)
    p.add_argument("--edges", action="store_true", help="write every run's edge list when --runs > 1")
    p.add_argument("--update", choices=UPDATE_MODES, default="per_edge",
                   help="when consonant degrees are updated (both give identical networks)")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("correlate", help="Pearson correlation of consonant frequencies between families")
    p.add_argument("--input", required=True)
    p.add_argument("--family", default="all")
    common(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("control", help="fit randomly assembled pseudo-families")
    p.add_argument("--input", required=True)
    p.add_argument("--pool", default="all", help="families forming the sampling pool (default all)")
    p.add_argument("--sizes", type=_int_list, help="pseudo-family sizes (default 19,17,30,12,9)")
    p.add_argument("--trials", type=_positive_int, default=50)
    common(p)
    fitting(p)
    p.set_defaults(func=cmd_control)

    p = sub.add_parser("fixture", help="write the synthetic inventory fixture")
    p.add_argument("--out", default="fixture.tsv")
    p.add_argument("--seed", type=int, default=FIXTURE_SEED)
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=None)
    return parser


def _manifest_for(args, argv) -> RunManifest:
    grid = getattr(args, "grid", None)
    return RunManifest(
        command=args.command,
        input=getattr(args, "input", None) or getattr(args, "degrees_from", None),
        registry_size=getattr(args, "registry_size", None),
        grid=str(grid) if grid is not None else None,
        seed=getattr(args, "seed", None),
        argv=list(argv),
    )


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="planet: %(levelname)s: %(message)s")
    try:
        if args.command == "replay":
            recorded = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
            return main(recorded["argv"])
        if args.command == "fixture":
            return args.func(args)
        code = args.func(args)
        write_manifest(Path(args.out), _manifest_for(args, argv))
        return code
    except PlanetError as exc:
        sys.stderr.write(f"planet: error[{exc.code}]: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"planet: error[E_IO]: {exc}\n")
        return 1
    except (KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"planet: error[E_MANIFEST]: bad manifest: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
