"""Hot pixel kernels: numba-jitted loops with pure-numpy fallbacks.

The jitted path is used by default. Set ``INKMATCH_NO_NUMBA=1`` (or call
``set_backend(False)``) to force the numpy fallbacks; both paths produce
bit-identical outputs, which ``tests/test_kernels.py`` asserts and
``benchmarks/bench_kernels.py`` times.

Label conventions used throughout: int32 label maps, 0 = ink, region ids
are densely numbered 1..n in raster-scan first-encounter order.
"""

from __future__ import annotations

import os

import numpy as np
from scipy import ndimage

try:
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but degrade anyway
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore
        def wrap(fn):
            return fn

        return wrap

    prange = range


_PAIR_BASE = np.int64(1) << 31  # packs (r, s) label pairs into one int64

_OFFSETS_3X3 = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1)]


def _env_disabled() -> bool:
    return os.environ.get("INKMATCH_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


_use_numba = _HAVE_NUMBA and not _env_disabled()


def numba_enabled() -> bool:
    """True when the jitted kernel path is active."""
    return _use_numba


def set_backend(use_numba: bool) -> None:
    """Select the kernel backend at runtime (overrides the env flag)."""
    global _use_numba
    if use_numba and not _HAVE_NUMBA:
        raise RuntimeError("numba is not importable; cannot enable the jitted backend")
    _use_numba = use_numba


def backend_name() -> str:
    return "numba" if _use_numba else "numpy"


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs so timed runs are steady-state."""
    if not _use_numba:
        return
    img = np.zeros((8, 8), np.uint8)
    img[3:5, 3:5] = 255
    median_filter_u8(img, 3)
    lab, _ = label_components_4(img > 0)
    propagate_and_count_pairs(lab, 2)
    stroke_support(lab, lab)
    junction_candidates(lab)


# ---------------------------------------------------------------------------
# median filter
# ---------------------------------------------------------------------------


@njit(cache=True, parallel=True)
def _median_nb(padded, h, w, k):  # pragma: no cover - exercised via dispatcher
    out = np.empty((h, w), np.uint8)
    k2 = k * k
    mid = k2 // 2
    for y in prange(h):
        buf = np.empty(k2, np.uint8)
        for x in range(w):
            idx = 0
            for dy in range(k):
                for dx in range(k):
                    buf[idx] = padded[y + dy, x + dx]
                    idx += 1
            for i in range(1, k2):
                key = buf[i]
                j = i - 1
                while j >= 0 and buf[j] > key:
                    buf[j + 1] = buf[j]
                    j -= 1
                buf[j + 1] = key
            out[y, x] = buf[mid]
    return out


def _median_np(padded: np.ndarray, h: int, w: int, k: int) -> np.ndarray:
    win = np.lib.stride_tricks.sliding_window_view(padded, (k, k))
    flat = win.reshape(h, w, k * k)
    mid = (k * k) // 2
    return np.partition(flat, mid, axis=-1)[..., mid]


def median_filter_u8(img: np.ndarray, kernel: int) -> np.ndarray:
    """Median filter with edge replication at the borders."""
    if kernel == 1:
        return img.copy()
    pad = kernel // 2
    padded = np.pad(img, pad, mode="edge")
    h, w = img.shape
    if _use_numba:
        return _median_nb(padded, h, w, kernel)
    return _median_np(padded, h, w, kernel)


# ---------------------------------------------------------------------------
# 4-connected component labeling
# ---------------------------------------------------------------------------


@njit(cache=True)
def _label4_nb(mask):  # pragma: no cover - exercised via dispatcher
    h, w = mask.shape
    labels = np.zeros((h, w), np.int32)
    parent = np.zeros(h * w // 2 + 2, np.int32)
    nxt = 1
    for y in range(h):
        for x in range(w):
            if mask[y, x] == 0:
                continue
            up = labels[y - 1, x] if y > 0 else 0
            left = labels[y, x - 1] if x > 0 else 0
            if up == 0 and left == 0:
                parent[nxt] = nxt
                labels[y, x] = nxt
                nxt += 1
            elif up != 0 and left != 0:
                ru = up
                while parent[ru] != ru:
                    parent[ru] = parent[parent[ru]]
                    ru = parent[ru]
                rl = left
                while parent[rl] != rl:
                    parent[rl] = parent[parent[rl]]
                    rl = parent[rl]
                if ru < rl:
                    parent[rl] = ru
                    labels[y, x] = ru
                else:
                    parent[ru] = rl
                    labels[y, x] = rl
            elif up != 0:
                labels[y, x] = up
            else:
                labels[y, x] = left
    remap = np.zeros(nxt, np.int32)
    count = 0
    for y in range(h):
        for x in range(w):
            v = labels[y, x]
            if v == 0:
                continue
            r = v
            while parent[r] != r:
                parent[r] = parent[parent[r]]
                r = parent[r]
            if remap[r] == 0:
                count += 1
                remap[r] = count
            labels[y, x] = remap[r]
    return labels, count


_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.uint8)


def _relabel_first_encounter(lab: np.ndarray) -> tuple[np.ndarray, int]:
    flat = lab.ravel()
    vals, first = np.unique(flat, return_index=True)
    nz = vals != 0
    vals, first = vals[nz], first[nz]
    if vals.size == 0:
        return lab.astype(np.int32, copy=False), 0
    order = np.argsort(first, kind="stable")
    mapping = np.zeros(int(vals.max()) + 1, np.int32)
    mapping[vals[order]] = np.arange(1, order.size + 1, dtype=np.int32)
    return mapping[lab], int(order.size)


def _label4_np(mask: np.ndarray) -> tuple[np.ndarray, int]:
    lab, _ = ndimage.label(mask, structure=_CROSS)
    return _relabel_first_encounter(lab.astype(np.int32, copy=False))


def label_components_4(mask: np.ndarray) -> tuple[np.ndarray, int]:
    """Label 4-connected True components, ids 1..n in first-encounter order."""
    m = np.ascontiguousarray(mask, dtype=np.uint8)
    if _use_numba:
        labels, n = _label4_nb(m)
        return labels, int(n)
    return _label4_np(m)


# ---------------------------------------------------------------------------
# staged label propagation across ink: adjacency pair events + filled map
# ---------------------------------------------------------------------------


@njit(cache=True)
def _propagate_nb(labels, stages):  # pragma: no cover - exercised via dispatcher
    h, w = labels.shape
    cur = labels.copy()
    consumed = np.zeros((h, w), np.uint8)
    cap = 1024
    keys = np.empty(cap, np.int64)
    nk = 0
    win = np.empty(9, np.int64)
    for stage in range(stages + 1):
        for y in range(h):
            for x in range(w):
                if labels[y, x] != 0 or consumed[y, x] != 0:
                    continue
                nf = 0
                for dy in range(-1, 2):
                    ny = y + dy
                    if ny < 0 or ny >= h:
                        continue
                    for dx in range(-1, 2):
                        nx = x + dx
                        if nx < 0 or nx >= w:
                            continue
                        v = cur[ny, nx]
                        if v == 0:
                            continue
                        dup = False
                        for i in range(nf):
                            if win[i] == v:
                                dup = True
                                break
                        if not dup:
                            win[nf] = v
                            nf += 1
                if nf >= 2:
                    consumed[y, x] = 1
                    for i in range(1, nf):
                        key = win[i]
                        j = i - 1
                        while j >= 0 and win[j] > key:
                            win[j + 1] = win[j]
                            j -= 1
                        win[j + 1] = key
                    for i in range(nf):
                        for j in range(i + 1, nf):
                            if nk >= cap:
                                cap *= 2
                                grown = np.empty(cap, np.int64)
                                grown[:nk] = keys[:nk]
                                keys = grown
                            keys[nk] = win[i] * _PAIR_BASE + win[j]
                            nk += 1
        if stage == stages:
            break
        changed = False
        new = cur.copy()
        for y in range(h):
            for x in range(w):
                if cur[y, x] != 0:
                    continue
                best = 0
                for dy in range(-1, 2):
                    ny = y + dy
                    if ny < 0 or ny >= h:
                        continue
                    for dx in range(-1, 2):
                        nx = x + dx
                        if nx < 0 or nx >= w:
                            continue
                        v = cur[ny, nx]
                        if v != 0 and (best == 0 or v < best):
                            best = v
                if best != 0:
                    new[y, x] = best
                    changed = True
        cur = new
        if not changed:
            break
    return keys[:nk], cur


def _gather_windows(cur: np.ndarray, ys: np.ndarray, xs: np.ndarray, offsets) -> np.ndarray:
    h, w = cur.shape
    r = max(abs(d) for dd in offsets for d in dd)
    pad = np.zeros((h + 2 * r, w + 2 * r), np.int64)
    pad[r : r + h, r : r + w] = cur
    wins = np.empty((ys.size, len(offsets)), np.int64)
    for i, (dy, dx) in enumerate(offsets):
        wins[:, i] = pad[ys + r + dy, xs + r + dx]
    return wins


def _propagate_np(labels: np.ndarray, stages: int) -> tuple[np.ndarray, np.ndarray]:
    h, w = labels.shape
    cur = labels.copy()
    ink_ys, ink_xs = np.nonzero(labels == 0)
    consumed = np.zeros(ink_ys.size, bool)
    chunks: list[np.ndarray] = []
    big = np.iinfo(np.int32).max
    for stage in range(stages + 1):
        active = np.flatnonzero(~consumed)
        if active.size:
            ys, xs = ink_ys[active], ink_xs[active]
            wins = _gather_windows(cur, ys, xs, _OFFSETS_3X3)
            wins.sort(axis=1)
            wins[:, 1:][wins[:, 1:] == wins[:, :-1]] = 0
            hit = (wins > 0).sum(axis=1) >= 2
            if hit.any():
                hw = wins[hit]
                for i in range(9):
                    a = hw[:, i]
                    if not (a > 0).any():
                        continue
                    for j in range(i + 1, 9):
                        b = hw[:, j]
                        ok = (a > 0) & (b > 0)
                        if ok.any():
                            chunks.append(a[ok] * _PAIR_BASE + b[ok])
                consumed[active[hit]] = True
        if stage == stages:
            break
        shifted = np.full((9, h, w), big, np.int32)
        for i, (dy, dx) in enumerate(_OFFSETS_3X3):
            src = cur[
                max(0, -dy) : h - max(0, dy),
                max(0, -dx) : w - max(0, dx),
            ]
            dst = shifted[
                i,
                max(0, dy) : h - max(0, -dy),
                max(0, dx) : w - max(0, -dx),
            ]
            np.copyto(dst, np.where(src == 0, big, src))
        cand = shifted.min(axis=0)
        grow = (cur == 0) & (cand != big)
        if not grow.any():
            break
        cur = np.where(grow, cand, cur).astype(np.int32, copy=False)
    keys = np.concatenate(chunks) if chunks else np.empty(0, np.int64)
    return keys, cur


def propagate_and_count_pairs(labels: np.ndarray, stages: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Spread region labels across ink and record pair co-visibility events.

    Every ink pixel contributes one event per unordered label pair the first
    time its 3x3 window sees two or more distinct labels; between checks the
    labels dilate one step (ties resolve to the smaller label). Returns
    (r_ids, s_ids, counts, filled_map) with r < s.
    """
    lab = np.ascontiguousarray(labels, dtype=np.int32)
    if _use_numba:
        keys, filled = _propagate_nb(lab, stages)
    else:
        keys, filled = _propagate_np(lab, stages)
    if keys.size == 0:
        empty = np.empty(0, np.int64)
        return empty, empty, np.empty(0, np.int64), filled
    uniq, counts = np.unique(keys, return_counts=True)
    return uniq // _PAIR_BASE, uniq % _PAIR_BASE, counts, filled


# ---------------------------------------------------------------------------
# stroke support pixels: ink whose filled 3x3 window sees exactly two labels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _support_nb(labels, filled):  # pragma: no cover - exercised via dispatcher
    h, w = labels.shape
    cap = 1024
    out = np.empty((cap, 4), np.int64)
    n = 0
    win = np.empty(9, np.int64)
    for y in range(h):
        for x in range(w):
            if labels[y, x] != 0:
                continue
            nf = 0
            for dy in range(-1, 2):
                ny = y + dy
                if ny < 0 or ny >= h:
                    continue
                for dx in range(-1, 2):
                    nx = x + dx
                    if nx < 0 or nx >= w:
                        continue
                    v = filled[ny, nx]
                    if v == 0:
                        continue
                    dup = False
                    for i in range(nf):
                        if win[i] == v:
                            dup = True
                            break
                    if not dup:
                        win[nf] = v
                        nf += 1
            if nf == 2:
                r = win[0] if win[0] < win[1] else win[1]
                s = win[1] if win[0] < win[1] else win[0]
                if filled[y, x] != r:
                    continue  # keep the min-label side only: 1-px chains
                if n >= cap:
                    cap *= 2
                    grown = np.empty((cap, 4), np.int64)
                    grown[:n] = out[:n]
                    out = grown
                out[n, 0] = y
                out[n, 1] = x
                out[n, 2] = r
                out[n, 3] = s
                n += 1
    return out[:n]


def _support_np(labels: np.ndarray, filled: np.ndarray) -> np.ndarray:
    ys, xs = np.nonzero(labels == 0)
    if ys.size == 0:
        return np.empty((0, 4), np.int64)
    wins = _gather_windows(filled, ys, xs, _OFFSETS_3X3)
    own = np.asarray(filled, dtype=np.int64)[ys, xs]
    wins.sort(axis=1)
    wins[:, 1:][wins[:, 1:] == wins[:, :-1]] = 0
    nf = (wins > 0).sum(axis=1)
    s = wins.max(axis=1)
    r = wins.sum(axis=1) - s
    hit = (nf == 2) & (own == r)
    if not hit.any():
        return np.empty((0, 4), np.int64)
    out = np.empty((int(hit.sum()), 4), np.int64)
    out[:, 0] = ys[hit]
    out[:, 1] = xs[hit]
    out[:, 2] = r[hit]
    out[:, 3] = s[hit]
    return out


def stroke_support(labels: np.ndarray, filled: np.ndarray) -> np.ndarray:
    """Rows (y, x, r, s) for ink pixels on the r-side of an (r, s) divide.

    An ink pixel qualifies when its 3x3 window of the propagated map holds
    exactly two region labels and its own propagated label is the smaller,
    which keeps the emitted chain one pixel wide along the territory divide.
    """
    lab = np.ascontiguousarray(labels, dtype=np.int32)
    fil = np.ascontiguousarray(filled, dtype=np.int32)
    if _use_numba:
        return _support_nb(lab, fil)
    return _support_np(lab, fil)


# ---------------------------------------------------------------------------
# junction candidates: ink pixels seeing >= 3 region ids in a 5x5 window
# ---------------------------------------------------------------------------


@njit(cache=True)
def _junction_nb(labels, reach):  # pragma: no cover - exercised via dispatcher
    h, w = labels.shape
    cap = 256
    out = np.empty((cap, 2), np.int64)
    n = 0
    win = np.empty((2 * reach + 1) * (2 * reach + 1), np.int64)
    for y in range(h):
        for x in range(w):
            if labels[y, x] != 0:
                continue
            nf = 0
            for dy in range(-reach, reach + 1):
                ny = y + dy
                if ny < 0 or ny >= h:
                    continue
                for dx in range(-reach, reach + 1):
                    nx = x + dx
                    if nx < 0 or nx >= w:
                        continue
                    v = labels[ny, nx]
                    if v == 0:
                        continue
                    dup = False
                    for i in range(nf):
                        if win[i] == v:
                            dup = True
                            break
                    if not dup:
                        win[nf] = v
                        nf += 1
            if nf >= 3:
                if n >= cap:
                    cap *= 2
                    grown = np.empty((cap, 2), np.int64)
                    grown[:n] = out[:n]
                    out = grown
                out[n, 0] = y
                out[n, 1] = x
                n += 1
    return out[:n]


def _junction_np(labels: np.ndarray, reach: int) -> np.ndarray:
    ys, xs = np.nonzero(labels == 0)
    if ys.size == 0:
        return np.empty((0, 2), np.int64)
    offsets = [(dy, dx) for dy in range(-reach, reach + 1) for dx in range(-reach, reach + 1)]
    wins = _gather_windows(labels, ys, xs, offsets)
    wins.sort(axis=1)
    wins[:, 1:][wins[:, 1:] == wins[:, :-1]] = 0
    hit = (wins > 0).sum(axis=1) >= 3
    out = np.empty((int(hit.sum()), 2), np.int64)
    out[:, 0] = ys[hit]
    out[:, 1] = xs[hit]
    return out


def junction_candidates(labels: np.ndarray, reach: int = 2) -> np.ndarray:
    """Rows (y, x) of ink pixels seeing >= 3 region ids within `reach`."""
    lab = np.ascontiguousarray(labels, dtype=np.int32)
    if _use_numba:
        return _junction_nb(lab, reach)
    return _junction_np(lab, reach)
