import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from excoll import _kernels, build_fan


requires_numba = pytest.mark.skipif(
    "numba" not in _kernels.BACKENDS, reason="numba not importable"
)


def _window(lo, hi):
    return np.array(
        list(itertools.product(range(lo, hi + 1), repeat=3)), dtype=np.int64
    )


@requires_numba
def test_forbidden_mask_backend_parity():
    pts = _window(-4, 4)
    for n in (2, 3, 5, 8):
        nb = _kernels.BACKENDS["numba"][0](n, pts)
        np_ = _kernels.BACKENDS["numpy"][0](n, pts)
        assert (nb == np_).all()


@requires_numba
def test_alpha_box_backend_parity():
    for n in (3, 4):
        for abc in [(0, 0, 0), (2, -1, 3), (-4, 4, 0), (1, 1, 1), (0, -2, -1)]:
            radius = max(abs(x) for x in abc) + n + 2
            nb = _kernels.BACKENDS["numba"][1](n, *abc, radius)
            np_ = _kernels.BACKENDS["numpy"][1](n, *abc, radius)
            assert nb == np_


@requires_numba
def test_chamber_scan_backend_parity():
    fan = build_fan(3)
    rays = np.array(fan.rays, dtype=np.int64)
    for coeff in [(0, 0, 0, 0, 0, 0), (0, 0, 2, 0, -1, 3), (1, -2, 0, 0, 5, 5)]:
        co = np.array(coeff, dtype=np.int64)
        nb = _kernels.BACKENDS["numba"][2](rays, co, 8)
        np_ = _kernels.BACKENDS["numpy"][2](rays, co, 8)
        assert nb == np_  # same codes and same first witnesses


def test_chamber_scan_guards():
    rays = np.ones((3, 1), dtype=np.int64)
    with pytest.raises(ValueError):
        _kernels.chamber_scan(rays, np.zeros(3, dtype=np.int64), 2)
    rays21 = np.zeros((21, 2), dtype=np.int64)
    with pytest.raises(ValueError):
        _kernels.chamber_scan(rays21, np.zeros(21, dtype=np.int64), 2)


def test_pattern_masks_are_cyclic_blocks():
    # 5 rotations of length 2 and 3 each, plus the full block.
    masks = set(int(m) for m in _kernels.PATTERN_MASKS)
    assert len(masks) == 11
    assert 0b11111 in masks
    for length in (2, 3):
        for start in range(5):
            mask = 0
            for k in range(length):
                mask |= 1 << ((start + k) % 5)
            assert mask in masks


def _run_with_backend(backend: str) -> subprocess.CompletedProcess:
    env = dict(os.environ, EXCOLL_BACKEND=backend)
    return subprocess.run(
        [sys.executable, "-c",
         "from excoll import _kernels; print(_kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
    )


def test_backend_env_selection():
    out = _run_with_backend("numpy")
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "numpy"


def test_backend_env_validation():
    out = _run_with_backend("fortran")
    assert out.returncode != 0
    assert "EXCOLL_BACKEND" in out.stderr


def test_numpy_backend_full_stack():
    # The fallback path must drive the public API end to end.
    code = (
        "from excoll import build_fan, DivisorClass, is_forbidden, "
        "has_higher_cohomology, brute_force_is_forbidden\n"
        "fan = build_fan(3)\n"
        "for abc in [(0,0,0),(0,-1,-1),(2,0,0),(0,1,1),(1,2,0)]:\n"
        "    d = DivisorClass(*abc)\n"
        "    f = is_forbidden(3, d)\n"
        "    assert f == has_higher_cohomology(fan, d), abc\n"
        "    assert f == brute_force_is_forbidden(3, d, 10), abc\n"
        "print('ok')\n"
    )
    env = dict(os.environ, EXCOLL_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"
