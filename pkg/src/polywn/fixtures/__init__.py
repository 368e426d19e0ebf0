"""Small shipped datasets used by the tests, demos and CLI examples.

``translation/``  ten English synsets with French/German witnesses, a 50-tuple
                  en/fr/de corpus, an en->es phrase table and Spanish gold.
``alignment/``    60 wordnet-like and 60 encyclopedia-like entities with one
                  gold link each, plus toy word vectors.
"""

import os

ROOT = os.path.dirname(os.path.abspath(__file__))


def path(*parts: str) -> str:
    """Absolute path of a fixture file, e.g. ``path("translation", "lemmas.tsv")``."""
    return os.path.join(ROOT, *parts)
