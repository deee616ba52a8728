"""Write tests/fixtures/{toy_embeddings.txt, toy_document.txt, stopwords.txt}.

Four themes, each a bundle of unit vectors around its own axis in 8
dimensions, so spherical k-means with K=4 should recover them.
"""
from pathlib import Path

import numpy as np

THEMES = {
    "medicine": "drug pill dose tablet medicine pharmacy prescription dosage generic treatment therapy infection",
    "business": "company acquisition startup deal market investor revenue sales rights shares profit merger",
    "people": "executive founder manager chief doctor patient nurse physician lawyer official critic analyst",
    "protest": "protest outrage letter petition boycott complaint hearing senator congress lawmaker society campaign petitioners",
}
EXTRA = "price"  # sits near the medicine axis

out = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
rng = np.random.default_rng(20160620)
rows = []
for axis, words in enumerate(THEMES.values()):
    for word in words.split():
        v = rng.normal(0, 0.15, 8)
        v[axis] += 1.0
        v[axis + 4] += 0.3
        rows.append((word, v))
v = rng.normal(0, 0.15, 8)
v[0] += 1.0
rows.append((EXTRA, v))
assert len(rows) == 50, len(rows)

with open(out / "toy_embeddings.txt", "w") as fh:
    fh.write(f"{len(rows)} 8\n")
    for word, vec in rows:
        fh.write(word + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")

words = [w for w, _ in rows]
weights = {w: 1 + int(rng.integers(0, 6)) for w in words}
for w in ("drug", "price", "company", "protest", "executive"):
    weights[w] += 8
tokens = [w for w in words for _ in range(weights[w])]
rng.shuffle(tokens)
fillers = ["the", "a", "of", "and", "to", "in", "was", "overnight", "Tuesday"]
text = []
for i, tok in enumerate(tokens):
    text.append(tok.capitalize() if i % 13 == 0 else tok)
    if i % 3 == 0:
        text.append(fillers[i % len(fillers)])
    if i % 11 == 10:
        text[-1] += "."
(out / "toy_document.txt").write_text(" ".join(text) + "\n")
(out / "stopwords.txt").write_text("\n".join(["the", "a", "of", "and", "to", "in", "was"]) + "\n")
