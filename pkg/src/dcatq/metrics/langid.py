"""Stopword-frequency language guess for en/de/fr/es/it metadata text."""

from __future__ import annotations

import re
from collections import Counter

STOPWORDS = {
    "en": """the of and to in is that for on with as by are this from be at or an which
        was were have has it its not but all their these data more can will about
        into other also been such each than""",
    "de": """der die das und ist im den von zu mit sich des auf für nicht eine einer
        eines dem ein werden wird auch aus bei oder sind nach wie über zum zur daten
        durch wurde diese dieser unter""",
    "fr": """le la les et des du est une un pour dans que qui sur au aux par pas plus
        avec ce cette sont ou été être leur entre données sous ces""",
    "es": """el la los las y del que en es por con para una un se al como más pero sus
        son está este esta entre sobre datos también fue ha hay""",
    "it": """il lo la gli le di che e è per con non una un del della delle dei degli
        nel nella sono alla al come anche questo questa dati sul più""",
}
LANGUAGES = tuple(STOPWORDS)
_STOP = {lang: frozenset(words.split()) for lang, words in STOPWORDS.items()}

MIN_TOKENS = 8
MIN_HITS = 3
MIN_MARGIN = 2.0

_TOKEN = re.compile(r"[^\W\d_]+", re.UNICODE)

# ISO 639-2 (bibliographic and terminology) and names seen in EU vocabularies
_ALIASES = {
    "eng": "en", "english": "en",
    "deu": "de", "ger": "de", "german": "de",
    "fra": "fr", "fre": "fr", "french": "fr",
    "spa": "es", "spanish": "es",
    "ita": "it", "italian": "it",
}


def detect_language(text: str) -> str | None:
    """Best language, or None when the text is short or the winner is not clear.

    A language wins when it has at least MIN_HITS stopword hits and at least
    MIN_MARGIN times the hits of the runner-up.
    """
    tokens = [t.lower() for t in _TOKEN.findall(text)]
    if len(tokens) < MIN_TOKENS:
        return None
    hits = Counter()
    for tok in tokens:
        for lang in LANGUAGES:
            if tok in _STOP[lang]:
                hits[lang] += 1
    ranked = sorted(LANGUAGES, key=lambda lang: (-hits[lang], lang))
    best, second = hits[ranked[0]], hits[ranked[1]]
    if best < MIN_HITS or best < MIN_MARGIN * second:
        return None
    return ranked[0]


def language_code(declared: str) -> str | None:
    """Map a language tag, ISO code or EU authority IRI to a two-letter code.

    Returns None for languages outside the supported set.
    """
    value = declared.strip().rstrip("/")
    if "/" in value or "#" in value:
        value = re.split(r"[/#]", value)[-1]
    value = value.lower().split("-")[0].split("_")[0]
    value = _ALIASES.get(value, value)
    return value if value in _STOP else None
