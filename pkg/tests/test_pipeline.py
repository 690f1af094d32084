import csv

import numpy as np
import pytest

from freqaug.augment import AugmentParams, augment_pair
from freqaug.errors import (
    InsufficientDomainsError,
    MaskSizeMismatchError,
    MissingCounterpartError,
    MissingDirectoryError,
    UndecodableImageError,
    ValidationError,
)
from freqaug.imgio import clamp01, decode_image, decode_mask, encode_image, encode_mask, resize_bilinear
from freqaug.pipeline import (
    RunConfig,
    ingest,
    inspect_spectrum,
    leave_one_out_splits,
    run_augmentation,
    run_metrics,
    sample_lambda,
)

from . import oracles
from .synthetic_fundus import make_fundus, write_domain_tree


@pytest.fixture
def tree(tmp_path):
    return write_domain_tree(tmp_path / "data", n_domains=4, per_domain=2, seed=3)


# --- ingest ---------------------------------------------------------------

def test_ingest_counts_and_order(tree):
    datasets = ingest(tree)
    assert [d.domain_id for d in datasets] == [1, 2, 3, 4]
    for dataset in datasets:
        assert len(dataset.entries) == 2
        names = [e.image.name for e in dataset.entries]
        assert names == sorted(names)
        for entry in dataset.entries:
            assert entry.cup_mask is not None and entry.disc_mask is not None


def test_ingest_pairs_png_masks_with_ppm_images(tree):
    first = ingest(tree)[0].entries[0]
    assert first.image.suffix == ".ppm"
    assert first.cup_mask.suffix == ".png"


def test_ingest_missing_images_dir(tree):
    (tree / "domain2" / "images").rename(tree / "domain2" / "imgs")
    with pytest.raises(MissingDirectoryError, match="domain2"):
        ingest(tree)


def test_ingest_missing_root(tmp_path):
    with pytest.raises(MissingDirectoryError):
        ingest(tmp_path / "nope")


def test_ingest_no_domain_dirs(tmp_path):
    (tmp_path / "something").mkdir()
    with pytest.raises(MissingDirectoryError):
        ingest(tmp_path)


def test_ingest_undecodable_image(tree):
    (tree / "domain1" / "images" / "broken.png").write_bytes(b"garbage")
    with pytest.raises(UndecodableImageError, match="broken"):
        ingest(tree)


def test_ingest_mask_size_mismatch(tree, rng):
    bad = rng.random((5, 5)) > 0.5
    encode_mask(bad, tree / "domain1" / "masks_cup" / "img_01.png")
    with pytest.raises(MaskSizeMismatchError, match="img_01"):
        ingest(tree)


def test_ingest_without_masks(tmp_path):
    root = write_domain_tree(tmp_path / "plain", n_domains=2, per_domain=2, with_masks=False)
    datasets = ingest(root)
    assert all(e.cup_mask is None for d in datasets for e in d.entries)


# --- splits ----------------------------------------------------------------

def test_four_domains_give_four_splits(tree):
    datasets = ingest(tree)
    splits = leave_one_out_splits(datasets)
    assert len(splits) == 4
    tested = []
    for train, test in splits:
        assert len(train) == 3
        assert test.domain_id not in [d.domain_id for d in train]
        assert sorted([d.domain_id for d in train] + [test.domain_id]) == [1, 2, 3, 4]
        tested.append(test.domain_id)
    assert sorted(tested) == [1, 2, 3, 4]


def test_two_domains_give_two_splits(tmp_path):
    root = write_domain_tree(tmp_path / "two", n_domains=2, per_domain=1)
    splits = leave_one_out_splits(ingest(root))
    assert len(splits) == 2
    assert all(len(train) == 1 for train, _ in splits)


def test_single_domain_is_rejected(tmp_path):
    root = write_domain_tree(tmp_path / "one", n_domains=1, per_domain=1)
    with pytest.raises(InsufficientDomainsError):
        leave_one_out_splits(ingest(root))


# --- lambda sampling --------------------------------------------------------

def test_fixed_lambda_is_constant():
    rng = np.random.default_rng(0)
    assert all(sample_lambda(rng, 1.0) == 1.0 for _ in range(10))


def test_uniform_lambda_is_reproducible():
    rng_a = np.random.default_rng(123)
    rng_b = np.random.default_rng(123)
    seq_a = [sample_lambda(rng_a, "uniform") for _ in range(100)]
    seq_b = [sample_lambda(rng_b, "uniform") for _ in range(100)]
    assert seq_a == seq_b


def test_uniform_lambda_covers_half_open_interval():
    rng = np.random.default_rng(9)
    draws = np.array([sample_lambda(rng, "uniform") for _ in range(10_000)])
    assert draws.min() > 0.0
    assert draws.max() <= 1.0
    assert abs(draws.mean() - 0.5) < 0.02


def test_bad_lambda_mode_rejected():
    rng = np.random.default_rng(0)
    with pytest.raises(ValidationError):
        sample_lambda(rng, "gaussian")
    with pytest.raises(ValidationError):
        sample_lambda(rng, 1.5)


# --- run_augmentation --------------------------------------------------------

def _run(tree, out, **overrides):
    settings = dict(
        source_domains=(1, 2, 3),
        target_domains=(1, 2, 3),
        output_dir=out,
        lambda_mode="uniform",
        alpha=0.05,
        seed=11,
        resize=(32, 32),
        st_enabled=True,
    )
    settings.update(overrides)
    return run_augmentation(RunConfig(**settings), ingest(tree))


def test_manifest_has_one_row_per_source_image(tree, tmp_path):
    rows = _run(tree, tmp_path / "out")
    assert len(rows) == 6
    assert rows == sorted(rows, key=lambda r: r["source_path"])
    for row in rows:
        decoded = decode_image(row["output_path"])
        assert decoded.shape == (3, 32, 32)


def test_reruns_are_bitwise_identical(tree, tmp_path):
    out = tmp_path / "out"
    first = _run(tree, out)
    snapshot = {p.name: p.read_bytes() for p in out.iterdir()}
    second = _run(tree, out)
    assert first == second
    for p in out.iterdir():
        assert p.read_bytes() == snapshot[p.name]


def test_different_seeds_differ(tree, tmp_path):
    rows_a = _run(tree, tmp_path / "a", seed=1)
    rows_b = _run(tree, tmp_path / "b", seed=2)
    assert [r["lambda"] for r in rows_a] != [r["lambda"] for r in rows_b]


def test_lambda_zero_passthrough_reproduces_resized_sources(tree, tmp_path):
    rows = _run(tree, tmp_path / "out", lambda_mode=0.0, st_enabled=False)
    for row in rows:
        source = resize_bilinear(decode_image(row["source_path"]), 32, 32)
        output = decode_image(row["output_path"])
        assert np.abs(output - clamp01(source)).max() <= 1.0 / 255.0


def test_pipeline_matches_manual_composition(tree, tmp_path):
    rows = _run(tree, tmp_path / "out", lambda_mode=0.7)
    row = rows[0]
    source = resize_bilinear(decode_image(row["source_path"]), 32, 32)
    target = resize_bilinear(decode_image(row["target_path"]), 32, 32)
    params = AugmentParams(lam=float(row["lambda"]), alpha=float(row["alpha"]), st_enabled=True)
    expected, _ = augment_pair(source, target, params)
    expected_bytes = np.rint(clamp01(expected) * 255.0).astype(np.uint8)
    written = np.rint(decode_image(row["output_path"]) * 255.0).astype(np.uint8)
    assert np.array_equal(expected_bytes, written)


def test_unknown_domain_rejected(tree, tmp_path):
    with pytest.raises(ValidationError, match="domain"):
        _run(tree, tmp_path / "out", source_domains=(9,))


def test_config_validation():
    with pytest.raises(ValidationError):
        RunConfig(source_domains=(), target_domains=(1,), output_dir="x")
    with pytest.raises(ValidationError):
        RunConfig(source_domains=(1,), target_domains=(1,), output_dir="x", lambda_mode=2.0)
    with pytest.raises(ValidationError):
        RunConfig(source_domains=(1,), target_domains=(1,), output_dir="x", alpha=1.0)
    with pytest.raises(ValidationError):
        RunConfig(source_domains=(1,), target_domains=(1,), output_dir="x", resize=(0, 4))


# --- run_metrics ---------------------------------------------------------------

def _write_mask_dirs(base, pairs):
    # pairs: name -> (truth, prediction) for both structures
    for side in ("pred", "truth"):
        for structure in ("cup", "disc"):
            (base / side / structure).mkdir(parents=True, exist_ok=True)
    for name, (truth, pred) in pairs.items():
        for structure in ("cup", "disc"):
            encode_mask(truth, base / "truth" / structure / name)
            encode_mask(pred, base / "pred" / structure / name)
    return base / "pred", base / "truth"


def test_perfect_predictions_score_perfectly(tmp_path, rng):
    m1 = rng.random((8, 8)) > 0.5
    m2 = rng.random((8, 8)) > 0.5
    m1[4, 4] = m2[2, 2] = True
    pred, truth = _write_mask_dirs(
        tmp_path, {"domain1__a.png": (m1, m1), "domain2__b.png": (m2, m2)}
    )
    rows = run_metrics(pred, truth)
    for row in rows:
        assert row["dsc"] == 100.0
        assert row["hd"] == 0.0 and row["asd"] == 0.0


def test_report_aggregates_match_oracle_means(tmp_path, rng):
    pairs = {}
    oracle_rows = []
    for k in range(4):
        truth = np.zeros((8, 8), dtype=bool)
        pred = np.zeros((8, 8), dtype=bool)
        truth.flat[rng.choice(64, size=5, replace=False)] = True
        pred.flat[rng.choice(64, size=5, replace=False)] = True
        pairs[f"img{k}.png"] = (truth, pred)
        pa, pb = oracles.boundary_points(truth), oracles.boundary_points(pred)
        oracle_rows.append(
            (
                100.0 * oracles.dice_coefficient(truth, pred),
                oracles.hausdorff_distance(pa, pb),
                oracles.average_surface_distance(pa, pb),
            )
        )
    pred_dir, truth_dir = _write_mask_dirs(tmp_path, pairs)
    rows = run_metrics(pred_dir, truth_dir)
    cup_mean = next(
        r for r in rows if r["row_kind"] == "group_mean" and r["structure"] == "cup"
    )
    expected = np.mean(oracle_rows, axis=0)
    assert cup_mean["dsc"] == pytest.approx(expected[0], abs=1e-9)
    assert cup_mean["hd"] == pytest.approx(expected[1], abs=1e-9)
    assert cup_mean["asd"] == pytest.approx(expected[2], abs=1e-9)
    average = next(r for r in rows if r["row_kind"] == "average" and r["structure"] == "cup")
    assert average["dsc"] == pytest.approx(expected[0], abs=1e-9)


def test_missing_counterpart_is_named(tmp_path, rng):
    m = rng.random((6, 6)) > 0.5
    m[3, 3] = True
    pred, truth = _write_mask_dirs(tmp_path, {"present.png": (m, m)})
    encode_mask(m, truth / "cup" / "only_truth.png")
    with pytest.raises(MissingCounterpartError, match="only_truth"):
        run_metrics(pred, truth)


def test_empty_masks_are_flagged_not_fatal(tmp_path, rng):
    m = rng.random((6, 6)) > 0.5
    m[3, 3] = True
    empty = np.zeros((6, 6), dtype=bool)
    pred, truth = _write_mask_dirs(
        tmp_path, {"a.png": (m, m), "b.png": (m, empty), "c.png": (empty, empty)}
    )
    rows = run_metrics(pred, truth)
    by_name = {r["name"]: r for r in rows if r["row_kind"] == "image" and r["structure"] == "cup"}
    assert by_name["b.png"]["note"] == "empty-pred"
    assert by_name["b.png"]["dsc"] == 0.0
    assert np.isnan(by_name["b.png"]["hd"])
    assert by_name["c.png"]["note"] == "empty-both"
    assert by_name["c.png"]["dsc"] == 100.0
    group = next(r for r in rows if r["row_kind"] == "group_mean" and r["structure"] == "cup")
    assert group["note"] == "excludes-empty"
    assert group["hd"] == 0.0  # only the clean pair contributes


def test_metrics_csv_is_written(tmp_path, rng):
    m = rng.random((6, 6)) > 0.4
    m[0, 0] = True
    pred, truth = _write_mask_dirs(tmp_path, {"a.png": (m, m)})
    out = tmp_path / "report.csv"
    run_metrics(pred, truth, out_csv=out)
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["dsc"] == "100.0"
    assert {r["row_kind"] for r in rows} == {"image", "group_mean", "average"}


def test_metrics_requires_structure_dirs(tmp_path):
    (tmp_path / "pred").mkdir()
    (tmp_path / "truth").mkdir()
    with pytest.raises(MissingDirectoryError):
        run_metrics(tmp_path / "pred", tmp_path / "truth")


def test_mask_shape_mismatch_between_sides(tmp_path, rng):
    a = rng.random((6, 6)) > 0.5
    a[1, 1] = True
    b = rng.random((8, 8)) > 0.5
    b[1, 1] = True
    for side, mask in (("pred", a), ("truth", b)):
        (tmp_path / side / "cup").mkdir(parents=True)
        encode_mask(mask, tmp_path / side / "cup" / "x.png")
    with pytest.raises(MaskSizeMismatchError):
        run_metrics(tmp_path / "pred", tmp_path / "truth")


# --- inspect_spectrum -----------------------------------------------------------

def test_constant_image_gives_single_bright_center(tmp_path):
    src = tmp_path / "const.png"
    encode_image(np.full((3, 16, 16), 0.6), src)
    out = tmp_path / "spec.png"
    inspect_spectrum(src, out)
    heat = decode_image(out)
    assert heat[0, 8, 8] == 1.0
    rest = heat.copy()
    rest[:, 8, 8] = 0.0
    assert rest.max() == 0.0


def test_impulse_image_gives_uniform_heatmap(tmp_path):
    x = np.zeros((3, 16, 16))
    x[:, 0, 0] = 1.0
    src = tmp_path / "impulse.png"
    encode_image(x, src)
    out = tmp_path / "spec.png"
    inspect_spectrum(src, out)
    heat = decode_image(out)
    assert heat.max() == heat.min()


def test_heatmap_values_are_in_unit_range(tmp_path, rng):
    image, _, _ = make_fundus(rng, 32, 32)
    src = tmp_path / "fundus.png"
    encode_image(image, src)
    out = tmp_path / "spec.png"
    inspect_spectrum(src, out)
    heat = decode_image(out)
    assert heat.min() >= 0.0 and heat.max() <= 1.0
