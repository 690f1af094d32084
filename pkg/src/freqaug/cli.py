"""Command line entry point.

Subcommands: augment, splits, metrics, spectrum, selftest. Exit codes:
0 success, 1 validation or usage error, 2 I/O error. Every flag can also
be given in a key=value config file passed with --config; explicit flags
win over the config file. FREQAUG_OUTPUT_DIR, when set, overrides the
config file's output directory but not an explicit --out flag.
"""

import argparse
import os
import sys
from pathlib import Path

from .errors import DataError, ValidationError
from .pipeline import (
    RunConfig,
    ingest,
    inspect_spectrum,
    leave_one_out_splits,
    run_augmentation,
    run_metrics,
)
from .selfcheck import run_all

OUTPUT_DIR_ENV = "FREQAUG_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "augmented"


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract reserves
    # 2 for I/O problems, so route usage errors through ValidationError
    def error(self, message):
        raise ValidationError(message)


def _parse_domains(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.replace(",", " ").split())
    except ValueError:
        raise ValidationError(f"cannot parse domain list {text!r}")


def _parse_lambda(text: str):
    if text == "uniform":
        return "uniform"
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"--lambda expects a float or 'uniform', got {text!r}")


def _parse_resize(text: str) -> tuple[int, int]:
    try:
        h, w = text.lower().split("x")
        return int(h), int(w)
    except ValueError:
        raise ValidationError(f"--resize expects HxW such as 256x256, got {text!r}")


def _read_config_file(path: str) -> dict:
    values = {}
    config = Path(path)
    if not config.is_file():
        raise DataError(f"config file not found: {config}")
    for lineno, line in enumerate(config.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{config}:{lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _build_parser() -> _Parser:
    parser = _Parser(prog="freqaug", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file; flags take precedence")

    p_aug = sub.add_parser("augment", parents=[common], help="batch-augment a dataset")
    p_aug.add_argument("--root", help="dataset root with domain1..domainK directories")
    p_aug.add_argument("--source-domains", help="comma-separated ids, e.g. 1,2,3")
    p_aug.add_argument("--target-domains", help="comma-separated ids")
    p_aug.add_argument("--lambda", dest="lam", help="mixing strength: float or 'uniform'")
    p_aug.add_argument("--alpha", type=float, help="soft-threshold fraction in [0, 1)")
    p_aug.add_argument("--no-st", action="store_true", help="disable soft thresholding")
    p_aug.add_argument("--resize", help="working resolution HxW (default 256x256)")
    p_aug.add_argument("--seed", type=int, help="random seed (default 0)")
    p_aug.add_argument("--out", help="output directory for images and manifest")

    p_splits = sub.add_parser("splits", parents=[common], help="print the hold-one-out plan")
    p_splits.add_argument("--root", help="dataset root")

    p_metrics = sub.add_parser("metrics", parents=[common], help="score masks against truth")
    p_metrics.add_argument("--pred", help="directory of predicted masks (cup/, disc/)")
    p_metrics.add_argument("--truth", help="directory of ground-truth masks")
    p_metrics.add_argument("--out", help="report CSV path")

    p_spec = sub.add_parser("spectrum", parents=[common], help="write an amplitude heatmap")
    p_spec.add_argument("--image", help="input image path")
    p_spec.add_argument("--out", help="output heatmap path")

    sub.add_parser("selftest", parents=[common], help="run the built-in oracle suites")
    return parser


def _setting(args, file_values: dict, key: str, default=None, parse=None):
    # explicit flag wins over the config file; the output-dir env override
    # is handled separately in _cmd_augment
    value = getattr(args, key, None)
    if value is None:
        value = file_values.get(key, default)
    if value is None:
        return None
    if parse is not None and isinstance(value, str):
        return parse(value)
    return value


def _require(value, flag: str):
    if value is None:
        raise ValidationError(f"missing required option {flag}")
    return value


def _cmd_augment(args, file_values):
    out_default = os.environ.get(OUTPUT_DIR_ENV) or file_values.get("out", DEFAULT_OUTPUT_DIR)
    out_dir = args.out if args.out is not None else out_default
    config = RunConfig(
        source_domains=_require(
            _setting(args, file_values, "source_domains", parse=_parse_domains),
            "--source-domains",
        ),
        target_domains=_require(
            _setting(args, file_values, "target_domains", parse=_parse_domains),
            "--target-domains",
        ),
        output_dir=Path(out_dir),
        lambda_mode=_setting(args, file_values, "lam", default="uniform", parse=_parse_lambda),
        alpha=float(_setting(args, file_values, "alpha", default=0.05)),
        seed=int(_setting(args, file_values, "seed", default=0)),
        resize=_setting(args, file_values, "resize", default="256x256", parse=_parse_resize),
        st_enabled=not (
            args.no_st or str(file_values.get("no_st", "")).lower() in ("true", "1", "yes")
        ),
    )
    root = _require(_setting(args, file_values, "root"), "--root")
    datasets = ingest(root)
    rows = run_augmentation(config, datasets)
    print(f"augmented {len(rows)} images -> {config.output_dir / 'manifest.csv'}")
    return 0


def _cmd_splits(args, file_values):
    root = _require(_setting(args, file_values, "root"), "--root")
    datasets = ingest(root)
    for train, test in leave_one_out_splits(datasets):
        train_names = ",".join(f"domain{d.domain_id}" for d in train)
        print(f"split {test.domain_id}: test=domain{test.domain_id} train={train_names}")
    return 0


def _cmd_metrics(args, file_values):
    pred = _require(_setting(args, file_values, "pred"), "--pred")
    truth = _require(_setting(args, file_values, "truth"), "--truth")
    out = _setting(args, file_values, "out")
    rows = run_metrics(pred, truth, out_csv=out)
    for row in rows:
        if row["row_kind"] != "image":
            scope = row["group"] or "average"
            print(
                f"{row['structure']} {scope}: dsc={row['dsc']:.2f} "
                f"hd={row['hd']:.3f} asd={row['asd']:.3f}"
            )
    if out:
        print(f"report -> {out}")
    return 0


def _cmd_spectrum(args, file_values):
    image = _require(_setting(args, file_values, "image"), "--image")
    out = _require(_setting(args, file_values, "out"), "--out")
    inspect_spectrum(image, out)
    print(f"heatmap -> {out}")
    return 0


def _cmd_selftest(args, file_values):
    results = run_all()
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
        failed += 0 if result.passed else 1
    if failed:
        raise ValidationError(f"{failed} selfcheck(s) failed")
    return 0


_COMMANDS = {
    "augment": _cmd_augment,
    "splits": _cmd_splits,
    "metrics": _cmd_metrics,
    "spectrum": _cmd_spectrum,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        file_values = _read_config_file(args.config) if args.config else {}
        return _COMMANDS[args.command](args, file_values)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
