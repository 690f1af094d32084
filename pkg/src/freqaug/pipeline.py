"""Dataset walking, split planning, batch augmentation and metric reports.

A dataset root holds one directory per domain, named domain1..domainK,
each with an images/ directory and optional masks_cup/ and masks_disc/
directories whose files mirror the image filenames (same name, or same
stem with a .png extension). Manifests and reports are CSV with a header
row. Augmented outputs and manifests are bit-reproducible for a fixed
seed and configuration.
"""

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .augment import AugmentParams, augment_pair
from .errors import (
    InsufficientDomainsError,
    MaskSizeMismatchError,
    MissingCounterpartError,
    MissingDirectoryError,
    DataError,
    ValidationError,
)
from .fourier import dft2
from .imgio import (
    IMAGE_EXTENSIONS,
    clamp01,
    decode_image,
    decode_mask,
    encode_image,
    resize_bilinear,
)
from .metrics import average_surface_distance, dice, extract_boundary, hausdorff
from .types import STRUCTURES

_DOMAIN_DIR = re.compile(r"^domain(\d+)$")
_GROUP_PREFIX = re.compile(r"^(domain\d+)__")

MANIFEST_NAME = "manifest.csv"
MANIFEST_FIELDS = ("source_path", "target_path", "lambda", "alpha", "output_path")
REPORT_FIELDS = ("row_kind", "structure", "group", "name", "dsc", "hd", "asd", "note")


@dataclass(frozen=True)
class ImageEntry:
    """One image with its optional ground-truth masks."""

    image: Path
    cup_mask: Path | None = None
    disc_mask: Path | None = None


@dataclass(frozen=True)
class DomainDataset:
    """All entries of one domain, in lexicographic filename order."""

    domain_id: int
    entries: tuple[ImageEntry, ...]


@dataclass(frozen=True)
class RunConfig:
    """Settings for one batch augmentation run.

    lambda_mode is either a fixed float (operationally (0, 1]; 0 is
    accepted as a testing endpoint) or the string "uniform" for a fresh
    draw from (0, 1] per image pair.
    """

    source_domains: tuple[int, ...]
    target_domains: tuple[int, ...]
    output_dir: Path
    lambda_mode: float | str = "uniform"
    alpha: float = 0.05
    seed: int = 0
    resize: tuple[int, int] = (256, 256)
    st_enabled: bool = True

    def __post_init__(self):
        object.__setattr__(
            self, "source_domains", tuple(sorted(set(int(d) for d in self.source_domains)))
        )
        object.__setattr__(
            self, "target_domains", tuple(sorted(set(int(d) for d in self.target_domains)))
        )
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if not self.source_domains or not self.target_domains:
            raise ValidationError("source and target domain lists must be non-empty")
        if isinstance(self.lambda_mode, str):
            if self.lambda_mode != "uniform":
                raise ValidationError(
                    f"lambda_mode must be a float or 'uniform', got {self.lambda_mode!r}"
                )
        else:
            lam = float(self.lambda_mode)
            if not (np.isfinite(lam) and 0.0 <= lam <= 1.0):
                raise ValidationError(f"fixed lambda must lie in [0, 1], got {lam}")
            object.__setattr__(self, "lambda_mode", lam)
        if not 0.0 <= self.alpha < 1.0:
            raise ValidationError(f"alpha must lie in [0, 1), got {self.alpha}")
        if int(self.seed) < 0:
            raise ValidationError("seed must be a non-negative integer")
        h, w = self.resize
        if int(h) < 1 or int(w) < 1:
            raise ValidationError(f"resize dimensions must be positive, got {self.resize}")
        object.__setattr__(self, "resize", (int(h), int(w)))


def _find_mask(mask_dir: Path, image_name: str) -> Path | None:
    if not mask_dir.is_dir():
        return None
    exact = mask_dir / image_name
    if exact.is_file():
        return exact
    as_png = mask_dir / (Path(image_name).stem + ".png")
    if as_png.is_file():
        return as_png
    return None


def ingest(root) -> list[DomainDataset]:
    """Scan a dataset root and return validated per-domain datasets.

    Every image is decoded once to confirm it is readable; masks, when
    present, must match their image's dimensions at native resolution."""
    root = Path(root)
    if not root.is_dir():
        raise MissingDirectoryError(str(root))
    found = []
    for child in sorted(root.iterdir()):
        m = _DOMAIN_DIR.match(child.name)
        if m and child.is_dir():
            found.append((int(m.group(1)), child))
    if not found:
        raise MissingDirectoryError(f"no domain directories under {root}")
    datasets = []
    for domain_id, domain_dir in sorted(found):
        images_dir = domain_dir / "images"
        if not images_dir.is_dir():
            raise MissingDirectoryError(str(images_dir))
        image_paths = sorted(
            p for p in images_dir.iterdir()
            if p.is_file() and p.suffix.lower() in IMAGE_EXTENSIONS
        )
        if not image_paths:
            raise DataError(f"no images under {images_dir}")
        entries = []
        for path in image_paths:
            pixels = decode_image(path)
            shape = pixels.shape[1:]
            masks = {}
            for structure in STRUCTURES:
                mask_path = _find_mask(domain_dir / f"masks_{structure}", path.name)
                if mask_path is not None:
                    mask = decode_mask(mask_path)
                    if mask.shape != shape:
                        raise MaskSizeMismatchError(
                            f"mask {mask_path} is {mask.shape}, image {path} is {shape}"
                        )
                masks[structure] = mask_path
            entries.append(
                ImageEntry(image=path, cup_mask=masks["cup"], disc_mask=masks["disc"])
            )
        datasets.append(DomainDataset(domain_id=domain_id, entries=tuple(entries)))
    return datasets


def leave_one_out_splits(datasets) -> list[tuple[list[DomainDataset], DomainDataset]]:
    """All hold-one-out splits: element k trains on every domain except the
    k-th, which becomes the unseen test domain."""
    datasets = list(datasets)
    if len(datasets) < 2:
        raise InsufficientDomainsError(
            f"need at least 2 domains for hold-one-out splits, got {len(datasets)}"
        )
    return [
        ([d for j, d in enumerate(datasets) if j != k], datasets[k])
        for k in range(len(datasets))
    ]


def sample_lambda(rng: np.random.Generator, mode) -> float:
    """Fixed float mode returns that value; "uniform" draws from (0, 1].

    rng.random() covers [0, 1), so 1 - rng.random() lands in (0, 1]."""
    if isinstance(mode, str):
        if mode != "uniform":
            raise ValidationError(f"unknown lambda mode {mode!r}")
        return 1.0 - float(rng.random())
    lam = float(mode)
    if not (np.isfinite(lam) and 0.0 <= lam <= 1.0):
        raise ValidationError(f"fixed lambda must lie in [0, 1], got {lam}")
    return lam


def run_augmentation(config: RunConfig, datasets) -> list[dict]:
    """Augment every source-domain image against a randomly drawn target
    image and write outputs plus a manifest CSV under config.output_dir.

    For each source image (walked in domain order, filenames sorted) one
    target image is drawn uniformly from the pooled target domains and one
    lambda is sampled; both draws come from a generator seeded with
    config.seed, so reruns reproduce the manifest and the output pixels
    exactly. Returns the manifest rows sorted by source path."""
    by_id = {d.domain_id: d for d in datasets}
    for domain_id in (*config.source_domains, *config.target_domains):
        if domain_id not in by_id:
            raise ValidationError(f"unknown domain id {domain_id}")
    sources = [
        (d, entry)
        for d in (by_id[i] for i in config.source_domains)
        for entry in d.entries
    ]
    target_pool = [
        entry.image for i in config.target_domains for entry in by_id[i].entries
    ]

    out_dir = config.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(config.seed)
    height, width = config.resize

    rows = []
    for dataset, entry in sources:
        target_path = target_pool[int(rng.integers(len(target_pool)))]
        lam = sample_lambda(rng, config.lambda_mode)
        params = AugmentParams(lam=lam, alpha=config.alpha, st_enabled=config.st_enabled)
        source = resize_bilinear(decode_image(entry.image), height, width)
        target = resize_bilinear(decode_image(target_path), height, width)
        augmented, _ = augment_pair(source, target, params)
        out_path = out_dir / f"domain{dataset.domain_id}__{entry.image.stem}.png"
        encode_image(clamp01(augmented), out_path)
        rows.append(
            {
                "source_path": str(entry.image),
                "target_path": str(target_path),
                "lambda": repr(lam),
                "alpha": repr(config.alpha),
                "output_path": str(out_path),
            }
        )
    rows.sort(key=lambda r: r["source_path"])
    with open(out_dir / MANIFEST_NAME, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=MANIFEST_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    return rows


def _mask_pair_scores(truth: np.ndarray, pred: np.ndarray) -> tuple[float, float, float, str]:
    note = ""
    if not truth.any() and not pred.any():
        note = "empty-both"
    elif not truth.any():
        note = "empty-truth"
    elif not pred.any():
        note = "empty-pred"
    dsc = dice(truth, pred)
    if note:
        return dsc, float("nan"), float("nan"), note
    boundary_truth = extract_boundary(truth)
    boundary_pred = extract_boundary(pred)
    hd = hausdorff(boundary_truth, boundary_pred)
    asd = average_surface_distance(boundary_truth, boundary_pred)
    return dsc, hd, asd, note


def _group_of(name: str) -> str:
    m = _GROUP_PREFIX.match(name)
    return m.group(1) if m else "all"


def _mean(values: list[float]) -> float:
    return float(np.mean(values)) if values else float("nan")


def run_metrics(pred_dir, truth_dir, out_csv=None) -> list[dict]:
    """Score predicted masks against ground truth and return report rows.

    Each side holds cup/ and disc/ subdirectories of mask PNGs with
    matching filenames. Per-image rows are followed by per-group means
    (groups come from a leading "domainK__" filename prefix, else "all")
    and one overall average row per structure, the mean of the group
    means. DSC is reported scaled by 100; empty masks are flagged in the
    note column and excluded from hd/asd means."""
    pred_dir = Path(pred_dir)
    truth_dir = Path(truth_dir)
    structures = [s for s in STRUCTURES if (truth_dir / s).is_dir() or (pred_dir / s).is_dir()]
    if not structures:
        raise MissingDirectoryError(
            f"no cup/ or disc/ directories under {truth_dir} or {pred_dir}"
        )
    rows = []
    for structure in structures:
        truth_sub = truth_dir / structure
        pred_sub = pred_dir / structure
        for sub in (truth_sub, pred_sub):
            if not sub.is_dir():
                raise MissingDirectoryError(str(sub))
        truth_names = {p.name for p in truth_sub.glob("*.png")}
        pred_names = {p.name for p in pred_sub.glob("*.png")}
        for name in sorted(truth_names - pred_names):
            raise MissingCounterpartError(f"no prediction for {truth_sub / name}")
        for name in sorted(pred_names - truth_names):
            raise MissingCounterpartError(f"no ground truth for {pred_sub / name}")

        image_rows = []
        for name in sorted(truth_names):
            truth = decode_mask(truth_sub / name)
            pred = decode_mask(pred_sub / name)
            if truth.shape != pred.shape:
                raise MaskSizeMismatchError(
                    f"{truth_sub / name} is {truth.shape}, {pred_sub / name} is {pred.shape}"
                )
            dsc, hd, asd, note = _mask_pair_scores(truth, pred)
            image_rows.append(
                {
                    "row_kind": "image",
                    "structure": structure,
                    "group": _group_of(name),
                    "name": name,
                    "dsc": dsc * 100.0,
                    "hd": hd,
                    "asd": asd,
                    "note": note,
                }
            )
        rows.extend(image_rows)

        group_means = []
        for group in sorted({r["group"] for r in image_rows}):
            members = [r for r in image_rows if r["group"] == group]
            clean = [r for r in members if not r["note"]]
            mean_row = {
                "row_kind": "group_mean",
                "structure": structure,
                "group": group,
                "name": "",
                "dsc": _mean([r["dsc"] for r in members]),
                "hd": _mean([r["hd"] for r in clean]),
                "asd": _mean([r["asd"] for r in clean]),
                "note": "" if len(clean) == len(members) else "excludes-empty",
            }
            group_means.append(mean_row)
        rows.extend(group_means)
        rows.append(
            {
                "row_kind": "average",
                "structure": structure,
                "group": "",
                "name": "",
                "dsc": _mean([r["dsc"] for r in group_means]),
                "hd": _mean([r["hd"] for r in group_means if not np.isnan(r["hd"])]),
                "asd": _mean([r["asd"] for r in group_means if not np.isnan(r["asd"])]),
                "note": "",
            }
        )
    if out_csv is not None:
        out_csv = Path(out_csv)
        out_csv.parent.mkdir(parents=True, exist_ok=True)
        with open(out_csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=REPORT_FIELDS)
            writer.writeheader()
            for row in rows:
                formatted = dict(row)
                for key in ("dsc", "hd", "asd"):
                    value = row[key]
                    formatted[key] = "" if np.isnan(value) else repr(float(value))
                writer.writerow(formatted)
    return rows


def inspect_spectrum(image_path, out_path) -> None:
    """Write a per-channel amplitude heatmap: log(1 + A), normalized to
    [0, 1] per channel, shifted so the zero frequency sits at the center
    (the shift is display-only)."""
    x = decode_image(image_path)
    amplitude = np.abs(dft2(x))
    heat = np.log1p(amplitude)
    lo = heat.min(axis=(1, 2), keepdims=True)
    hi = heat.max(axis=(1, 2), keepdims=True)
    span = hi - lo
    span[span == 0.0] = 1.0
    heat = (heat - lo) / span
    encode_image(np.fft.fftshift(heat, axes=(1, 2)), out_path)
