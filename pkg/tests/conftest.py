import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings  # noqa: E402

from codedshift.automaton import build_flower  # noqa: E402
from codedshift.generators import GeneratorSet  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def w(text):
    """Digit string to word tuple."""
    return tuple(int(c) for c in text)


def s(word):
    return "".join(map(str, word))


def flower(size, *words):
    return build_flower(GeneratorSet.from_strings(size, list(words)))
