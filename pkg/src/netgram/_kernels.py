"""Bitmask enumeration kernels behind the brute-force checks.

Each kernel exists twice: a numba ``@njit`` loop and a chunked numpy
version.  ``NETGRAM_DISABLE_NUMBA=1`` (or a missing numba) selects numpy.
Both return the first witness mask in increasing order, or -1.
"""
from __future__ import annotations

import os

import numpy as np

CHUNK = 1 << 15


def _numba_wanted() -> bool:
    return os.environ.get("NETGRAM_DISABLE_NUMBA", "").strip().lower() not in {"1", "true", "yes"}


try:  # pragma: no cover - exercised implicitly by whichever path is active
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


# -- numpy implementations ------------------------------------------------------


def _np_subset_cover(codes: np.ndarray, n_images: int) -> int:
    m = codes.shape[0]
    full = (1 << n_images) - 1
    bits = np.left_shift(np.int64(1), codes.astype(np.int64))
    total = 1 << m
    for start in range(0, total - 1, CHUNK):
        masks = np.arange(start, min(start + CHUNK, total - 1), dtype=np.int64)
        cov = np.zeros_like(masks)
        for i in range(m):
            cov |= np.where((masks >> i) & 1, bits[i], 0)
        hit = np.flatnonzero(cov == full)
        if hit.size:
            return int(masks[hit[0]])
    return -1


def _np_horn_subset(forbidden: np.ndarray, req: np.ndarray, cover: np.ndarray) -> int:
    m = forbidden.shape[0]
    total = 1 << m
    for start in range(0, total - 1, CHUNK):
        masks = np.arange(start, min(start + CHUNK, total - 1), dtype=np.int64)
        ok = np.ones(masks.shape, dtype=bool)
        for i in range(m):
            inside = ((masks >> i) & 1).astype(bool)
            if forbidden[i]:
                ok &= ~inside
            else:
                ok &= ~inside | ((masks & req[i]) == req[i])
        for c in cover:
            ok &= (masks & c) != 0
        hit = np.flatnonzero(ok)
        if hit.size:
            return int(masks[hit[0]])
    return -1


def _np_scan_rows(hook_owner, hook_ptr, needs, lhs, rhs):
    nv = lhs.shape[0]
    total = 1 << nv
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        valid = np.ones(masks.shape, dtype=bool)
        for h in range(hook_owner.shape[0]):
            owned = ((masks >> hook_owner[h]) & 1).astype(bool)
            covered = np.zeros(masks.shape, dtype=bool)
            for j in range(hook_ptr[h], hook_ptr[h + 1]):
                covered |= (masks & needs[j]) == needs[j]
            valid &= ~owned | covered
        left = np.zeros_like(masks)
        right = np.zeros_like(masks)
        for v in range(nv):
            inside = ((masks >> v) & 1).astype(bool)
            left |= np.where(inside, lhs[v], 0)
            right |= np.where(inside, rhs[v], 0)
        bad = valid & ((left & ~right) != 0)
        hit = np.flatnonzero(bad)
        if hit.size:
            return int(masks[hit[0]])
    return -1


def _np_part_count(node_part, pair_part, n_symbols):
    total = 1 << n_symbols
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        score = np.zeros_like(masks)
        for s in node_part:
            score += (masks >> s) & 1
        for s in pair_part:
            score -= (masks >> s) & 1
        for s in range(n_symbols):
            score -= (masks >> s) & 1
        hit = np.flatnonzero(score > 0)
        if hit.size:
            return int(masks[hit[0]])
    return -1


# -- numba implementations --------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _nb_subset_cover(codes, n_images):
        m = codes.shape[0]
        full = (np.int64(1) << n_images) - 1
        total = np.int64(1) << m
        for mask in range(total - 1):
            cov = np.int64(0)
            for i in range(m):
                if (mask >> i) & 1:
                    cov |= np.int64(1) << codes[i]
            if cov == full:
                return mask
        return -1

    @numba.njit(cache=True)
    def _nb_horn_subset(forbidden, req, cover):
        m = forbidden.shape[0]
        total = np.int64(1) << m
        for mask in range(total - 1):
            ok = True
            for i in range(m):
                if (mask >> i) & 1:
                    if forbidden[i] or (mask & req[i]) != req[i]:
                        ok = False
                        break
            if not ok:
                continue
            for c in cover:
                if (mask & c) == 0:
                    ok = False
                    break
            if ok:
                return mask
        return -1

    @numba.njit(cache=True)
    def _nb_scan_rows(hook_owner, hook_ptr, needs, lhs, rhs):
        nv = lhs.shape[0]
        total = np.int64(1) << nv
        for mask in range(total):
            valid = True
            for h in range(hook_owner.shape[0]):
                if (mask >> hook_owner[h]) & 1:
                    covered = False
                    for j in range(hook_ptr[h], hook_ptr[h + 1]):
                        if (mask & needs[j]) == needs[j]:
                            covered = True
                            break
                    if not covered:
                        valid = False
                        break
            if not valid:
                continue
            left = np.int64(0)
            right = np.int64(0)
            for v in range(nv):
                if (mask >> v) & 1:
                    left |= lhs[v]
                    right |= rhs[v]
            if left & ~right:
                return mask
        return -1

    @numba.njit(cache=True)
    def _nb_part_count(node_part, pair_part, n_symbols):
        total = np.int64(1) << n_symbols
        for mask in range(total):
            score = 0
            for s in node_part:
                score += (mask >> s) & 1
            for s in pair_part:
                score -= (mask >> s) & 1
            for s in range(n_symbols):
                score -= (mask >> s) & 1
            if score > 0:
                return mask
        return -1


def backend() -> str:
    return "numba" if HAVE_NUMBA and _numba_wanted() else "numpy"


def _pick(nb_name: str, np_fn, use: str | None):
    use = use or backend()
    if use == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        return globals()[nb_name]
    return np_fn


def _i64(values) -> np.ndarray:
    return np.asarray(list(values), dtype=np.int64)


# -- public entry points --------------------------------------------------------------


def proper_subset_covers(codes, n_images: int, use: str | None = None) -> bool:
    """Is there a proper subset of items whose image codes still cover ``range(n_images)``?"""
    codes = _i64(codes)
    if codes.size == 0:
        return False
    return _pick("_nb_subset_cover", _np_subset_cover, use)(codes, n_images) >= 0


def horn_proper_subset(forbidden, req, cover, use: str | None = None) -> int:
    """First proper subset mask closed under ``i in S => req[i] <= S``, avoiding
    forbidden items and meeting every cover mask; -1 if none."""
    forbidden = np.asarray(list(forbidden), dtype=np.bool_)
    if forbidden.size == 0:
        return -1
    return int(_pick("_nb_horn_subset", _np_horn_subset, use)(forbidden, _i64(req), _i64(cover)))


def scan_rows(hook_owner, hook_ptr, needs, lhs, rhs, use: str | None = None) -> int:
    """First vertex-set mask whose hooks are all covered by an edge inside the
    set yet whose ``lhs`` bits escape its ``rhs`` bits; -1 if none."""
    return int(
        _pick("_nb_scan_rows", _np_scan_rows, use)(
            _i64(hook_owner), _i64(hook_ptr), _i64(needs), _i64(lhs), _i64(rhs)
        )
    )


def part_count_scan(node_part, pair_part, n_symbols: int, use: str | None = None) -> int:
    """First symbol-set mask X with |nodes with part in X| - |pairs from those nodes| > |X|."""
    return int(
        _pick("_nb_part_count", _np_part_count, use)(_i64(node_part), _i64(pair_part), n_symbols)
    )
