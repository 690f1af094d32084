"""Fundus-like synthetic data: an elliptic disc and cup on a textured
background, plus a helper that lays out a multi-domain dataset tree."""

from pathlib import Path

import numpy as np

from freqaug.imgio import encode_image, encode_mask


def make_fundus(rng, height=64, width=64, warmth=1.0, brightness=1.0):
    """One synthetic fundus image with its cup and disc masks.

    Returns (image, cup_mask, disc_mask); the image is (3, H, W) in [0, 1],
    masks are (H, W) bool. warmth and brightness skew the palette so
    different domains look systematically different."""
    yy, xx = np.mgrid[0:height, 0:width].astype(float)
    tint = np.array([0.45 * warmth, 0.22, 0.12 / warmth]) * brightness
    image = np.empty((3, height, width))
    for c in range(3):
        field = np.full((height, width), tint[c])
        for _ in range(4):
            fy = rng.uniform(0.5, 3.0)
            fx = rng.uniform(0.5, 3.0)
            py, px = rng.uniform(0.0, 2.0 * np.pi, 2)
            field += rng.uniform(0.01, 0.05) * np.cos(
                2.0 * np.pi * fy * yy / height + py
            ) * np.cos(2.0 * np.pi * fx * xx / width + px)
        image[c] = field
    image += rng.normal(0.0, 0.008, image.shape)

    cy = height / 2.0 + rng.uniform(-height / 8.0, height / 8.0)
    cx = width / 2.0 + rng.uniform(-width / 8.0, width / 8.0)
    ry = rng.uniform(height / 7.0, height / 5.0)
    rx = rng.uniform(width / 7.0, width / 5.0)
    radial = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2
    disc_mask = radial <= 1.0
    cup_mask = ((yy - cy) / (0.55 * ry)) ** 2 + ((xx - cx) / (0.55 * rx)) ** 2 <= 1.0
    glow = np.exp(-1.5 * radial)
    for c, gain in enumerate((0.40, 0.30, 0.12)):
        image[c] += gain * brightness * glow
        image[c] += 0.12 * gain * cup_mask
    return np.clip(image, 0.0, 1.0), cup_mask, disc_mask


def write_domain_tree(root, n_domains=4, per_domain=8, seed=0, height=64, width=64,
                      with_masks=True):
    """Write domain1..domainN under root, each with images/ and, optionally,
    masks_cup/ and masks_disc/. The first image of each domain is a PPM to
    exercise both codecs (its masks stay PNG). Returns the root path."""
    root = Path(root)
    rng = np.random.default_rng(seed)
    for d in range(1, n_domains + 1):
        domain = root / f"domain{d}"
        (domain / "images").mkdir(parents=True, exist_ok=True)
        if with_masks:
            (domain / "masks_cup").mkdir(exist_ok=True)
            (domain / "masks_disc").mkdir(exist_ok=True)
        warmth = 0.8 + 0.15 * d
        brightness = 1.2 - 0.08 * d
        for i in range(per_domain):
            image, cup, disc = make_fundus(
                rng, height=height, width=width, warmth=warmth, brightness=brightness
            )
            ext = "ppm" if i == 0 else "png"
            name = f"img_{i:02d}"
            encode_image(image, domain / "images" / f"{name}.{ext}")
            if with_masks:
                encode_mask(cup, domain / "masks_cup" / f"{name}.png")
                encode_mask(disc, domain / "masks_disc" / f"{name}.png")
    return root
