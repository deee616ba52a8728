"""Regenerate src/topiccloud/data/helvetica.metrics from an AFM file.

Usage: python tools/make_metrics.py path/to/Helvetica.afm > src/topiccloud/data/helvetica.metrics
"""
import re
import sys
import unicodedata

ACCENTS = {
    "acute": "ACUTE",
    "grave": "GRAVE",
    "circumflex": "CIRCUMFLEX",
    "dieresis": "DIAERESIS",
    "tilde": "TILDE",
    "ring": "RING ABOVE",
    "cedilla": "CEDILLA",
    "caron": "CARON",
}
NAMED = {
    "quoteright": "’",
    "quoteleft": "‘",
    "quotesingle": "'",
    "grave": "`",
    "germandbls": "ß",
    "ae": "æ",
    "AE": "Æ",
    "oslash": "ø",
    "Oslash": "Ø",
    "endash": "–",
    "emdash": "—",
}


def glyph_char(code, name):
    if name in NAMED:
        return NAMED[name]
    if 32 <= code <= 126 and name not in ("quoteright", "quoteleft"):
        return chr(code)
    m = re.fullmatch(r"([A-Za-z])(" + "|".join(ACCENTS) + ")", name)
    if m:
        base, acc = m.groups()
        case = "CAPITAL" if base.isupper() else "SMALL"
        try:
            return unicodedata.lookup(f"LATIN {case} LETTER {base.upper()} WITH {ACCENTS[acc]}")
        except KeyError:
            return None
    return None


def main(path):
    header = {}
    glyphs = {}
    with open(path, encoding="latin-1") as fh:
        for line in fh:
            if line.startswith("C "):
                fields = dict(
                    part.strip().split(" ", 1) for part in line.split(";") if part.strip()
                )
                ch = glyph_char(int(fields["C"]), fields["N"])
                if ch is not None and ch not in glyphs:
                    glyphs[ch] = int(float(fields["WX"]))
            else:
                key, _, value = line.strip().partition(" ")
                header[key] = value
    out = sys.stdout
    out.write(f"# generated from {header.get('FontName', '?')} AFM by tools/make_metrics.py\n")
    out.write(f"family_name\t{header['FamilyName']}\n")
    out.write("units_per_em\t1000\n")
    out.write(f"ascent\t{int(header['Ascender'])}\n")
    out.write(f"descent\t{-int(header['Descender'])}\n")
    out.write(f"default_advance\t{glyphs[' ']}\n")
    for ch in sorted(glyphs):
        key = f"U+{ord(ch):04X}" if ch.isspace() or ch == "#" else ch
        out.write(f"{key}\t{glyphs[ch]}\n")


if __name__ == "__main__":
    main(sys.argv[1])
