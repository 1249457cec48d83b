"""Natural deduction for first-order logic: proof checking, search and exercises."""

import json
import os

from . import _nadeum

__all__ = [
    "NadeumError",
    "parse",
    "normalize",
    "replay",
    "prove",
    "countermodel",
    "trim",
    "export_certificate",
    "hilbert_check",
    "corpus",
    "corpus_dir",
]


class NadeumError(Exception):
    """Raised for any library error. `kind` names it, e.g. "ParseError"."""

    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _nadeum.Error as e:
        kind, message = e.args if len(e.args) == 2 else ("Error", str(e))
        raise NadeumError(kind, message) from None


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def parse(text):
    """Surface text to the JSON encoding of the formula."""
    return json.loads(_call(_nadeum.parse, text))


def normalize(formula):
    """Print a formula (surface text or JSON) with minimal parentheses."""
    return _call(_nadeum.normalize, _text(formula))


def replay(script):
    return json.loads(_call(_nadeum.replay, _text(script)))


def prove(formula, *, max_depth=12, max_term_depth=2, classical=True, time_budget_ms=5000, max_universe=3):
    return json.loads(
        _call(_nadeum.prove, _text(formula), max_depth, max_term_depth, classical, time_budget_ms, max_universe)
    )


def countermodel(formula, max_universe=3):
    found = _call(_nadeum.countermodel, _text(formula), max_universe)
    return None if found is None else json.loads(found)


def trim(history):
    return json.loads(_call(_nadeum.trim, _text(history)))


def export_certificate(script):
    return _call(_nadeum.export_certificate, _text(script))


def hilbert_check(proof):
    return json.loads(_call(_nadeum.hilbert_check, _text(proof)))


def corpus_dir():
    """Bundled exercises when installed, otherwise the build-time default."""
    if os.environ.get("NADEUM_EXERCISES"):
        return os.environ["NADEUM_EXERCISES"]
    bundled = os.path.join(os.path.dirname(__file__), "exercises")
    if os.path.isfile(os.path.join(bundled, "manifest.json")):
        return bundled
    return _nadeum.default_corpus_dir()


def corpus(dir=None):
    return json.loads(_call(_nadeum.corpus, dir or corpus_dir()))
