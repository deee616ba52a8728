"""Regenerate the golden layout dump and SVG for the six-topic fixture.

Run after an intentional change to layout or rendering output:

    python3 tools/make_golden.py
"""
from pathlib import Path

from topiccloud import LayoutParams, dump_layout, layout, render_svg
from topiccloud.topicset import default_lemmatizer, lemma_merge, load_topicset

ROOT = Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "tests" / "fixtures" / "six_topics.json"
GOLDEN = ROOT / "tests" / "golden"


def build():
    ts = lemma_merge(load_topicset(FIXTURE), default_lemmatizer())
    result = layout(ts, LayoutParams(seed=42))
    return dump_layout(result), render_svg(result)


def main():
    dump, svg = build()
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / "six_topics.layout.json").write_text(dump, encoding="utf-8")
    (GOLDEN / "six_topics.svg").write_text(svg, encoding="utf-8")
    print(f"wrote {GOLDEN}")


if __name__ == "__main__":
    main()
