"""Word splitting, stemming and stop-word selection for message/name matching.

The stemmer is a faithful implementation of the classic Porter suffix
stripping algorithm as used by its reference implementations (including the
two customary refinements: `bli` reduces to `ble` and `logi` to `log`).
Tested against a frozen reference vector list; see tests/data.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable

_VOWELS = "aeiou"


def split_words(text: str) -> list[str]:
    """Split on whitespace, punctuation, underscores, digit/letter boundaries
    and lower-to-upper camel boundaries; lowercase every token.

    "doScaleUp" -> ["do", "scale", "up"]; "mlockall" stays whole.
    """
    tokens: list[str] = []
    cur: list[str] = []
    prev = ""
    for ch in text:
        if not ch.isalnum():
            if cur:
                tokens.append("".join(cur))
                cur = []
            prev = ""
            continue
        if cur and ((prev.islower() and ch.isupper()) or (prev.isdigit() != ch.isdigit())):
            tokens.append("".join(cur))
            cur = []
        cur.append(ch)
        prev = ch
    if cur:
        tokens.append("".join(cur))
    return [t.lower() for t in tokens]


# ------------------------------------------------------------------- stemmer


def _is_cons(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return True if i == 0 else not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of VC sequences in the consonant/vowel run form of `stem`."""
    if not stem:
        return 0
    runs: list[str] = []
    for i in range(len(stem)):
        f = "C" if _is_cons(stem, i) else "V"
        if not runs or runs[-1] != f:
            runs.append(f)
    return "".join(runs).count("VC")


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_cons(word, len(word) - 1)


def _cvc(word: str) -> bool:
    """consonant-vowel-consonant ending where the last consonant is not w/x/y."""
    if len(word) < 3:
        return False
    if not (_is_cons(word, len(word) - 1) and not _is_cons(word, len(word) - 2) and _is_cons(word, len(word) - 3)):
        return False
    return word[-1] not in "wxy"


# (suffix, replacement) pairs; first match wins, exactly like the reference
# switch-on-penultimate-letter dispatch
_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("bli", "ble"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def stem(word: str) -> str:
    """Porter stem of a lowercase token. Idempotent on its own outputs."""
    if len(word) <= 2:
        return word
    w = word

    # step 1a: plurals
    if w.endswith("sses"):
        w = w[:-2]
    elif w.endswith("ies"):
        w = w[:-2]
    elif w.endswith("ss"):
        pass
    elif w.endswith("s"):
        w = w[:-1]

    # step 1b: -ed / -ing
    cleaned = False
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
    elif w.endswith("ed"):
        if _has_vowel(w[:-2]):
            w = w[:-2]
            cleaned = True
    elif w.endswith("ing"):
        if _has_vowel(w[:-3]):
            w = w[:-3]
            cleaned = True
    if cleaned:
        if w.endswith(("at", "bl", "iz")):
            w += "e"
        elif _ends_double_cons(w) and w[-1] not in "lsz":
            w = w[:-1]
        elif _measure(w) == 1 and _cvc(w):
            w += "e"

    # step 1c: terminal y
    if w.endswith("y") and _has_vowel(w[:-1]):
        w = w[:-1] + "i"

    # step 2: double suffixes (m > 0)
    for suf, rep in _STEP2:
        if w.endswith(suf):
            base = w[: -len(suf)]
            if _measure(base) > 0:
                w = base + rep
            break

    # step 3 (m > 0)
    for suf, rep in _STEP3:
        if w.endswith(suf):
            base = w[: -len(suf)]
            if _measure(base) > 0:
                w = base + rep
            break

    # step 4 (m > 1)
    for suf in _STEP4:
        if w.endswith(suf):
            base = w[: -len(suf)]
            if suf == "ion" and not (base and base[-1] in "st"):
                continue  # -ion only strips after s/t; try no further family
            if _measure(base) > 1:
                w = base
            break

    # step 5a: terminal e
    if w.endswith("e"):
        a = _measure(w)
        if a > 1 or (a == 1 and not _cvc(w[:-1])):
            w = w[:-1]

    # step 5b: terminal double l
    if w.endswith("l") and _ends_double_cons(w) and _measure(w) > 1:
        w = w[:-1]

    return w


def split_and_stem(text: str) -> list[str]:
    return [stem(t) for t in split_words(text)]


def compute_stop_words(token_lists: Iterable[list[str]], cap: int = 50) -> set[str]:
    """The min(cap, vocabulary) most frequent words, counting every occurrence
    across all messages; ties at the cutoff break lexicographically ascending."""
    counts: Counter[str] = Counter()
    for toks in token_lists:
        counts.update(toks)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {w for w, _ in ranked[: min(cap, len(ranked))]}
