"""Topic-cloud layout: slice allocation, word sizing and collision-free placement."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Union

from .geom import OccupancyGrid, SliceRegion, admissible_anchors, region_masks
from .rng import Stream
from .style import (
    FontMetrics,
    Palette,
    base_word_color,
    default_metrics,
    default_slice_palette,
    default_word_palette,
    measure_text,
    perturb_color,
    slice_color,
)
from .topicset import Topic, TopicSet


class EmptyCloudError(ValueError):
    pass


@dataclass(frozen=True)
class LayoutParams:
    beta: float = 1.0
    mu: float = 10.0
    sigma: float = 0.0
    f_max: float = 72.0
    f_min: float = 10.0
    f_floor: float = 4.0
    radius: float = 380.0
    epsilon: int = 20
    seed: int = 42
    width: int = 800
    height: int = 800
    max_topics: Optional[int] = None

    def __post_init__(self):
        problems = []
        if not self.beta > 0:
            problems.append("beta must be positive")
        if not self.mu > 1:
            problems.append("mu must exceed 1")
        if not self.sigma >= 0:
            problems.append("sigma must be non-negative")
        if not 0 < self.f_floor <= self.f_min <= self.f_max:
            problems.append("need 0 < f_floor <= f_min <= f_max")
        if not self.radius > 0:
            problems.append("radius must be positive")
        if not 0 <= self.epsilon <= 255:
            problems.append("epsilon must be in [0, 255]")
        if not 0 <= self.seed < 2**64:
            problems.append("seed must be a 64-bit unsigned integer")
        if self.width <= 0 or self.height <= 0:
            problems.append("canvas dimensions must be positive")
        elif min(self.width, self.height) < 2 * self.radius:
            problems.append("canvas must be at least 2*radius on each side")
        if self.max_topics is not None and self.max_topics < 1:
            problems.append("max_topics must be positive")
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def center(self) -> tuple[float, float]:
        return (self.width / 2, self.height / 2)


@dataclass(frozen=True)
class SliceSpec:
    topic_index: int
    start_angle: float
    sweep: float
    normalized_proportion: float
    color: tuple[int, int, int] = (255, 255, 255)


@dataclass(frozen=True)
class PlacedWord:
    surface: str
    font_size: float
    anchor: tuple[int, int]
    box: tuple[int, int]
    color: tuple[int, int, int]
    topic_index: int
    weight: float = 0.0
    requested_size: float = 0.0


@dataclass(frozen=True)
class Skipped:
    topic_index: int
    surface: str
    reason: str


@dataclass
class LayoutResult:
    slices: list[SliceSpec]
    words: list[PlacedWord]
    skipped: list[Skipped]
    params_echo: LayoutParams
    center: tuple[float, float]
    dropped_topics: list[tuple[int, str]] = field(default_factory=list)
    label: Optional[str] = None
    metrics: Optional[FontMetrics] = None

    def region(self, topic_index: int) -> SliceRegion:
        s = self.slices[topic_index]
        return SliceRegion(self.center, self.params_echo.radius, s.start_angle, s.sweep)


# -- the pipeline steps ----------------------------------------------------


def _rank(ps: list[float], mu: float) -> list[int]:
    order = sorted(range(len(ps)), key=lambda i: -ps[i])
    cutoff = ps[order[0]] / mu
    return [i for i in order if ps[i] >= cutoff]


def filter_topics(ts: TopicSet, mu: float) -> list[Topic]:
    """Topics by descending proportion, dropping those below p_1 / mu."""
    if not mu > 1:
        raise ValueError("mu must exceed 1")
    return [ts.topics[i] for i in _rank([t.proportion for t in ts.topics], mu)]


def normalize_proportions(ps: list[float], beta: float) -> list[float]:
    if not ps:
        raise ValueError("no proportions to normalize")
    if any(not p > 0 for p in ps) or not beta > 0:
        raise ValueError("proportions and beta must be positive")
    powered = [p ** beta for p in ps]
    total = math.fsum(powered)
    return [v / total for v in powered]


def compute_slices(pprimes: list[float], palette: Optional[Palette] = None) -> list[SliceSpec]:
    """Contiguous clockwise slices with the first one centered on the top (270 degrees)."""
    if not pprimes:
        raise ValueError("no slices")
    start = (270.0 - 180.0 * pprimes[0]) % 360.0
    slices = []
    for k, p in enumerate(pprimes):
        sweep = 360.0 * p
        color = slice_color(k, palette) if palette is not None else (255, 255, 255)
        slices.append(SliceSpec(k, start, sweep, p, color))
        start = (start + sweep) % 360.0
    return slices


def word_font_size(q: float, q_max: float, params: LayoutParams) -> float:
    if not 0 < q <= q_max:
        raise ValueError(f"need 0 < q <= q_max, got q={q}, q_max={q_max}")
    if q == q_max:
        return float(params.f_max)
    return max(params.f_max * (q / q_max) ** params.beta, params.f_min)


Probe = Callable[[SliceRegion, OccupancyGrid, tuple, object, object], None]


def place_word(
    surface: str,
    initial_size: float,
    region: SliceRegion,
    grid: OccupancyGrid,
    rng: Stream,
    params: LayoutParams,
    *,
    metrics: Optional[FontMetrics] = None,
    base_color=(0, 0, 0),
    topic_index: int = 0,
    weight: float = 0.0,
    probe: Optional[Probe] = None,
) -> Union[PlacedWord, Skipped]:
    """Place one word inside ``region``, shrinking by one unit until it fits.

    Sizes run initial, initial-1, ... down to ``f_floor``. Whether any box of
    a given size has a fully free, in-slice cell footprint is monotone in the
    size, so sizes that cannot fit are skipped by bisection before the exact
    admissible set is enumerated; the chosen size matches a plain countdown.
    """
    fm = metrics or default_metrics()
    sizes = []
    while initial_size - len(sizes) >= params.f_floor:
        sizes.append(initial_size - len(sizes))
    steps = len(sizes)
    if not steps:
        return Skipped(topic_index, surface, "no-fit")
    boxes = [measure_text(surface, s, fm) for s in sizes]

    masks = region_masks(region, grid.width, grid.height)
    blocked = grid.integral + masks.outside

    def fits_cells(j):
        ys, _ = admissible_anchors(boxes[j], region, grid, blocked, cells_only=True)
        return ys.size > 0

    if not fits_cells(steps - 1):
        return Skipped(topic_index, surface, "no-fit")
    lo, hi = 0, steps - 1  # first j whose footprint fits lies in [lo, hi]
    while lo < hi:
        mid = (lo + hi) // 2
        if fits_cells(mid):
            hi = mid
        else:
            lo = mid + 1

    for j in range(lo, steps):
        ys, xs = admissible_anchors(boxes[j], region, grid, blocked)
        if probe is not None:
            probe(region, grid, boxes[j], ys, xs)
        if ys.size:
            pick = rng.below(int(ys.size))
            x, y = int(xs[pick]), int(ys[pick])
            w, h = boxes[j]
            grid.mark(x, y, w, h)
            color = perturb_color(base_color, params.epsilon, rng)
            return PlacedWord(surface, sizes[j], (x, y), (w, h), color, topic_index, weight, initial_size)
    return Skipped(topic_index, surface, "no-fit")


def layout(
    ts: TopicSet,
    params: LayoutParams,
    *,
    metrics: Optional[FontMetrics] = None,
    slice_palette: Optional[Palette] = None,
    word_palette: Optional[Palette] = None,
    probe: Optional[Probe] = None,
) -> LayoutResult:
    fm = metrics or default_metrics()
    bg = slice_palette or default_slice_palette()
    fg = word_palette or default_word_palette()

    proportions = [t.proportion for t in ts.topics]
    kept = _rank(proportions, params.mu)
    dropped = [(i, "mu") for i in range(len(ts.topics)) if i not in set(kept)]
    if params.max_topics is not None and len(kept) > params.max_topics:
        dropped += [(i, "max_topics") for i in kept[params.max_topics:]]
        kept = kept[: params.max_topics]
    dropped.sort()
    topics = [ts.topics[i] for i in kept]

    pprimes = normalize_proportions([t.proportion for t in topics], params.beta)
    slices = compute_slices(pprimes, bg)
    q_max = max((w.weight for t in topics for w in t.words), default=0.0)

    skipped: list[Skipped] = []
    queues = []
    for k, t in enumerate(topics):
        ordered = sorted(t.words, key=lambda w: -w.weight)
        queue = []
        for w in ordered:
            if w.weight < params.sigma:
                skipped.append(Skipped(k, w.surface, "sigma"))
            else:
                queue.append(w)
        queues.append(queue)
    if not any(queues):
        raise EmptyCloudError("empty cloud: no words survive the sigma/mu thresholds")

    result = LayoutResult(slices, [], skipped, params, params.center, dropped, ts.label, fm)
    grid = OccupancyGrid(params.width, params.height)
    rng = Stream(params.seed)
    for k, queue in enumerate(queues):
        region = result.region(k)
        base = base_word_color(k, fg)
        for w in queue:
            # zero-weight words survive sigma=0; the lower clamp sizes them
            size = word_font_size(w.weight, q_max, params) if w.weight > 0 else float(params.f_min)
            placed = place_word(
                w.surface, size, region, grid, rng, params,
                metrics=fm, base_color=base, topic_index=k, weight=w.weight, probe=probe,
            )
            if isinstance(placed, Skipped):
                skipped.append(placed)
            else:
                result.words.append(placed)
    return result


# -- canonical serialization -----------------------------------------------


def layout_to_dict(result: LayoutResult) -> dict:
    fm = result.metrics
    return {
        "center": list(result.center),
        "params": asdict(result.params_echo),
        "font": None if fm is None else {
            "family_name": fm.family_name,
            "units_per_em": fm.units_per_em,
            "ascent": fm.ascent,
            "descent": fm.descent,
        },
        "label": result.label,
        "dropped_topics": [{"index": i, "reason": r} for i, r in result.dropped_topics],
        "slices": [
            {
                "topic_index": s.topic_index,
                "start_angle": s.start_angle,
                "sweep": s.sweep,
                "normalized_proportion": s.normalized_proportion,
                "color": list(s.color),
            }
            for s in result.slices
        ],
        "words": [
            {
                "topic_index": w.topic_index,
                "surface": w.surface,
                "weight": w.weight,
                "requested_size": w.requested_size,
                "font_size": w.font_size,
                "anchor": list(w.anchor),
                "box": list(w.box),
                "color": list(w.color),
            }
            for w in result.words
        ],
        "skipped": [
            {"topic_index": s.topic_index, "surface": s.surface, "reason": s.reason}
            for s in result.skipped
        ],
    }


def dump_layout(result: LayoutResult) -> str:
    """Canonical text form: fixed key order, shortest round-trip floats."""
    return json.dumps(layout_to_dict(result), ensure_ascii=False, indent=1) + "\n"
