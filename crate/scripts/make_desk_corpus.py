#!/usr/bin/env python3
"""Regenerate the desk corpus under corpus/desk/.

Natural images come from the scikit-image bundled data (CC0 / public domain,
see corpus/README.md). Synthetic images are piecewise-constant scenes with
soft gradients, drawn from a fixed seed. Everything is written as 8-bit
binary PGM with the longest side at most 256 pixels.
"""
import os
import sys

import numpy as np
import skimage
from skimage import color, io, transform

MAX_SIDE = 256
NATURAL = [
    "astronaut.png",
    "brick.png",
    "camera.png",
    "chelsea.png",
    "coffee.png",
    "coins.png",
    "grass.png",
    "gravel.png",
    "hubble_deep_field.jpg",
    "microaneurysms.png",
    "retina.jpg",
    "rocket.jpg",
    "text.png",
]
SYNTHETIC = 12


def to_gray(im):
    im = np.asarray(im)
    if im.ndim == 3:
        im = color.rgb2gray(im[..., :3])
    elif im.dtype == np.uint8:
        im = im.astype(np.float64) / 255.0
    scale = MAX_SIDE / max(im.shape)
    if scale < 1:
        shape = (round(im.shape[0] * scale), round(im.shape[1] * scale))
        im = transform.resize(im, shape, anti_aliasing=True)
    return np.clip(np.round(im * 255.0), 0, 255).astype(np.uint8)


def synthetic(seed, size=192):
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[:size, :size].astype(np.float64)
    gx, gy = rng.uniform(-0.3, 0.3, 2)
    im = rng.uniform(0.2, 0.8) + (gx * xx + gy * yy) / size
    for _ in range(rng.integers(4, 9)):
        cx, cy = rng.uniform(0, size, 2)
        r = rng.uniform(size / 16, size / 4)
        kind = rng.integers(3)
        if kind == 0:
            m = (xx - cx) ** 2 + (yy - cy) ** 2 < r**2
        elif kind == 1:
            m = (abs(xx - cx) < r) & (abs(yy - cy) < r * rng.uniform(0.3, 1.0))
        else:
            m = abs((xx - cx) + (yy - cy)) < r * 0.4
        im[m] = rng.uniform(0, 1)
    return np.clip(np.round(im * 255.0), 0, 255).astype(np.uint8)


def write_pgm(path, im):
    h, w = im.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(im.tobytes())


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    data = os.path.join(os.path.dirname(skimage.__file__), "data")
    for name in NATURAL:
        im = to_gray(io.imread(os.path.join(data, name)))
        write_pgm(os.path.join(out_dir, os.path.splitext(name)[0] + ".pgm"), im)
    for seed in range(SYNTHETIC):
        write_pgm(os.path.join(out_dir, f"synthetic_{seed:02}.pgm"), synthetic(seed))


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "corpus", "desk"))
