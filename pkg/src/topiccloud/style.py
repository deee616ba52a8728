"""Palettes, word colors and advance-width text measurement."""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .rng import Stream
from .topicset import ParseError

RGB = tuple[int, int, int]


@dataclass(frozen=True)
class Palette:
    colors: tuple[RGB, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(tuple(c) for c in self.colors))
        if not self.colors:
            raise ValueError("palette must contain at least one color")
        for c in self.colors:
            if len(c) != 3 or any(not 0 <= v <= 255 for v in c):
                raise ValueError(f"bad rgb triple {c!r}")

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, k: int) -> RGB:
        return self.colors[k % len(self.colors)]


def parse_palette(text: str) -> Palette:
    colors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if len(line) == 7 and line[0] == "#" and all(c in string.hexdigits for c in line[1:]):
            colors.append(tuple(int(line[i:i + 2], 16) for i in (1, 3, 5)))
        elif not line.startswith("#"):
            raise ParseError(f"expected #RRGGBB, got {line!r}", lineno, 1)
    return Palette(tuple(colors))


def load_palette(path: Union[str, Path]) -> Palette:
    return parse_palette(Path(path).read_text("utf-8"))


def _bundled(name: str) -> str:
    return resources.files("topiccloud.data").joinpath(name).read_text("utf-8")


def default_slice_palette() -> Palette:
    return parse_palette(_bundled("slice_palette.txt"))


def default_word_palette() -> Palette:
    return parse_palette(_bundled("word_palette.txt"))


def hex_color(c: RGB) -> str:
    return "#{:02X}{:02X}{:02X}".format(*c)


def slice_color(k: int, bg: Palette) -> RGB:
    if k < 0:
        raise ValueError("topic index must be non-negative")
    return bg.colors[k % len(bg.colors)]


def base_word_color(k: int, fg: Palette) -> RGB:
    if k < 0:
        raise ValueError("topic index must be non-negative")
    return fg.colors[k % len(fg.colors)]


def perturb_color(base: RGB, epsilon: int, rng: Stream) -> RGB:
    """Offset each channel (r, g, b in that order) by a uniform integer in [-eps, eps], then clamp."""
    if not 0 <= epsilon <= 255:
        raise ValueError("epsilon must be in [0, 255]")
    if epsilon == 0:
        return tuple(base)
    return tuple(min(255, max(0, c + rng.between(-epsilon, epsilon))) for c in base)


@dataclass(frozen=True)
class FontMetrics:
    family_name: str
    units_per_em: int
    ascent: int
    descent: int
    default_advance: int
    advance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.units_per_em <= 0:
            raise ValueError("units_per_em must be positive")
        if self.descent < 0 or self.ascent + self.descent <= 0:
            raise ValueError("ascent + descent must be positive, descent non-negative")

    def advance_units(self, text: str) -> int:
        return sum(self.advance.get(ch, self.default_advance) for ch in text)


_HEADER_INT = ("units_per_em", "ascent", "descent", "default_advance")


def parse_metrics(text: str) -> FontMetrics:
    header = {}
    advance = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("\t")
        if not sep:
            raise ParseError("expected key<TAB>value", lineno, 1)
        if key == "family_name":
            header[key] = value
            continue
        try:
            number = int(value)
        except ValueError:
            raise ParseError(f"expected an integer, got {value!r}", lineno, len(key) + 2) from None
        if key in _HEADER_INT:
            header[key] = number
        elif key.startswith("U+") and len(key) > 2:
            try:
                advance[chr(int(key[2:], 16))] = number
            except ValueError:
                raise ParseError(f"bad code point {key!r}", lineno, 1) from None
        elif len(key) == 1:
            advance[key] = number
        else:
            raise ParseError(f"unknown metrics key {key!r}", lineno, 1)
        if number < 0 and key not in ("ascent",):
            raise ParseError(f"{key} must be non-negative", lineno, len(key) + 2)
    missing = [k for k in ("family_name",) + _HEADER_INT if k not in header]
    if missing:
        raise ParseError(f"metrics file lacks {', '.join(missing)}")
    return FontMetrics(advance=advance, **header)


def load_metrics(path: Union[str, Path]) -> FontMetrics:
    return parse_metrics(Path(path).read_text("utf-8"))


def default_metrics() -> FontMetrics:
    return parse_metrics(_bundled("helvetica.metrics"))


def measure_text(surface: str, font_size: float, fm: FontMetrics) -> tuple[int, int]:
    """Pixel box (w, h) of ``surface`` set at ``font_size``; never below 1x1."""
    if font_size <= 0:
        raise ValueError("font size must be positive")
    w = math.ceil(fm.advance_units(surface) * font_size / fm.units_per_em)
    h = math.ceil((fm.ascent + fm.descent) * font_size / fm.units_per_em)
    return max(w, 1), max(h, 1)
