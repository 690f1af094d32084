"""Score a sloppy predicted mask against its ground truth with the three
mask metrics: dice overlap, Hausdorff distance and average surface
distance.

Run:  python demos/03_segmentation_metrics.py
"""

import numpy as np

from freqaug import (
    average_surface_distance,
    dice,
    extract_boundary,
    hausdorff,
    point_to_set_distance,
)


def ellipse(height, width, cy, cx, ry, rx):
    yy, xx = np.mgrid[0:height, 0:width]
    return ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0


truth = ellipse(48, 48, cy=24, cx=24, ry=12, rx=9)
pred = ellipse(48, 48, cy=26, cx=22, ry=11, rx=11)  # shifted and misshapen

boundary_truth = extract_boundary(truth)
boundary_pred = extract_boundary(pred)
print(f"truth: {truth.sum()} px, boundary {len(boundary_truth)} px")
print(f"pred:  {pred.sum()} px, boundary {len(boundary_pred)} px")

print()
print(f"dice                     {dice(truth, pred):.4f}")
print(f"hausdorff distance       {hausdorff(boundary_truth, boundary_pred):.4f} px")
print(f"average surface distance {average_surface_distance(boundary_truth, boundary_pred):.4f} px")

# the Hausdorff value is always witnessed by one worst-placed boundary pixel
worst = max(
    (point_to_set_distance(p, boundary_pred), (int(p[0]), int(p[1])))
    for p in boundary_truth
)
worst_rev = max(
    (point_to_set_distance(p, boundary_truth), (int(p[0]), int(p[1])))
    for p in boundary_pred
)
side = "truth" if worst >= worst_rev else "pred"
distance, pixel = max(worst, worst_rev)
print(f"worst pixel: {pixel} on the {side} boundary, {distance:.4f} px from the other surface")

print()
print("sanity checks on degenerate cases:")
print("  identical masks ->", dice(truth, truth), hausdorff(boundary_truth, boundary_truth))
empty = np.zeros_like(truth)
print("  both empty dice ->", dice(empty, empty))
print("  one empty dice  ->", dice(truth, empty))
