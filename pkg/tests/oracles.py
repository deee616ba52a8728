"""Independent reference checks used across the test modules.

These deliberately avoid the summed-area tables and lookup masks that the
package uses, so agreement means something.
"""

import itertools
import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from topiccloud.geom import point_in_slice, points_in_slice
from topiccloud.topicset import Topic, TopicSet, WordEntry


def literal_angle(x, y, cx, cy):
    return math.degrees(math.atan2(y - cy, x - cx)) % 360.0


def literal_in_slice(x, y, cx, cy, r, start, sweep):
    """Membership straight from the definition: distance, then angle interval."""
    if math.hypot(x - cx, y - cy) > r:
        return False
    if x == cx and y == cy:
        return True
    if sweep >= 360:
        return True
    return (literal_angle(x, y, cx, cy) - start) % 360.0 < sweep


def near_ray(x, y, region, tol=1e-9):
    """True when the point sits within ``tol`` degrees of either bounding ray."""
    cx, cy = region.center
    if x == cx and y == cy:
        return False
    a = literal_angle(x, y, cx, cy)
    for ray in (region.start_angle, (region.start_angle + region.sweep) % 360.0):
        d = abs((a - ray + 180.0) % 360.0 - 180.0)
        if d < tol:
            return True
    return False


def brute_admissible(x, y, w, h, region, cells):
    """Per-cell loop over the box plus scalar corner/center tests."""
    H, W = cells.shape
    if x < 0 or y < 0 or x + w > W or y + h > H:
        return False
    for p in [(x, y), (x + w, y), (x, y + h), (x + w, y + h), (x + w / 2, y + h / 2)]:
        if not point_in_slice(p, region):
            return False
    for yy in range(y, y + h):
        for xx in range(x, x + w):
            if cells[yy, xx] or not point_in_slice((xx + 0.5, yy + 0.5), region):
                return False
    return True


def brute_candidates(box, region, cells):
    """Scan every canvas anchor in row-major order (small canvases only)."""
    w, h = box
    H, W = cells.shape
    return [
        (x, y)
        for y in range(H - h + 1)
        for x in range(W - w + 1)
        if brute_admissible(x, y, w, h, region, cells)
    ]


def window_candidates(box, region, cells):
    """Sliding-window oracle for larger canvases: no prefix sums, no bbox clipping."""
    w, h = box
    H, W = cells.shape
    if w > W or h > H:
        return []
    xs = np.arange(W + 1, dtype=float)
    ys = np.arange(H + 1, dtype=float)
    in_cell = points_in_slice(xs[None, :-1] + 0.5, ys[:-1, None] + 0.5, region)
    bad = cells | ~in_cell
    free = ~sliding_window_view(bad, (h, w)).any(axis=(2, 3))
    ay, ax = np.nonzero(free)
    out = []
    for x, y in zip(ax.tolist(), ay.tolist()):
        pts = [(x, y), (x + w, y), (x, y + h), (x + w, y + h), (x + w / 2, y + h / 2)]
        if all(point_in_slice(p, region) for p in pts):
            out.append((x, y))
    return out


def rebuild_integral(cells):
    H, W = cells.shape
    S = np.zeros((H + 1, W + 1), dtype=np.int64)
    for y in range(H):
        run = 0
        for x in range(W):
            run += int(cells[y, x])
            S[y + 1, x + 1] = S[y, x + 1] + run
    return S


def brute_partition_objective(X, w):
    """Best 2-partition objective by enumerating every labelling."""
    n = len(X)
    best = math.inf
    best_labels = None
    for bits in itertools.product((0, 1), repeat=n):
        if bits[0] == 1 or len(set(bits)) < 2:
            continue
        labels = np.array(bits)
        total = 0.0
        for k in (0, 1):
            members = labels == k
            c = (X[members] * w[members, None]).sum(axis=0)
            c /= np.linalg.norm(c)
            total += float(np.dot(w[members], 1.0 - X[members] @ c))
        if total < best:
            best, best_labels = total, labels
    return best, best_labels


def random_topicset(rng, n_topics, n_words, alphabet="abcdefghijklmnopqrstuvwxyz"):
    topics = []
    for _ in range(n_topics):
        words = []
        for _ in range(n_words):
            length = int(rng.integers(2, 9))
            surface = "".join(alphabet[int(i)] for i in rng.integers(0, len(alphabet), length))
            words.append(WordEntry(surface, float(rng.uniform(0.01, 1.0))))
        topics.append(Topic(float(rng.uniform(0.05, 1.0)), tuple(words)))
    return TopicSet(tuple(topics))


def check_layout(result, exhaustive=True):
    """Assert pairwise non-overlap and per-cell slice containment."""
    words = result.words
    for a, b in itertools.combinations(words, 2):
        (ax, ay), (aw, ah) = a.anchor, a.box
        (bx, by), (bw, bh) = b.anchor, b.box
        overlap = ax < bx + bw and bx < ax + aw and ay < by + bh and by < ay + ah
        assert not overlap, (a, b)
    if not exhaustive:
        return
    for wd in words:
        region = result.region(wd.topic_index)
        x, y = wd.anchor
        w, h = wd.box
        for yy in range(y, y + h):
            for xx in range(x, x + w):
                assert point_in_slice((xx + 0.5, yy + 0.5), region), (wd, xx, yy)


def separable_candidates(box, region, cells):
    """Same set as window_candidates, with the window test split into row and column passes."""
    w, h = box
    H, W = cells.shape
    if w > W or h > H:
        return []
    in_cell = points_in_slice(np.arange(W)[None, :] + 0.5, np.arange(H)[:, None] + 0.5, region)
    bad = cells | ~in_cell
    rows = sliding_window_view(bad, w, axis=1).any(axis=2)
    free = ~sliding_window_view(rows, h, axis=0).any(axis=2)
    ay, ax = np.nonzero(free)
    x = ax.astype(float)
    y = ay.astype(float)
    ok = np.ones(len(ax), bool)
    for px, py in [(x, y), (x + w, y), (x, y + h), (x + w, y + h), (x + w / 2, y + h / 2)]:
        ok &= points_in_slice(px, py, region)
    return list(zip(ax[ok].tolist(), ay[ok].tolist()))
