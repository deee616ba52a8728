"""Topic clouds: pie charts of topics filled with importance-sized words."""

from .layout import LayoutParams, LayoutResult, dump_layout, layout
from .render import RenderOptions, render_svg
from .topicset import TopicSet, lemma_merge, parse_topicset, serialize_topicset, truncate_words

__all__ = [
    "LayoutParams",
    "LayoutResult",
    "RenderOptions",
    "TopicSet",
    "dump_layout",
    "layout",
    "lemma_merge",
    "parse_topicset",
    "render_svg",
    "serialize_topicset",
    "truncate_words",
]
