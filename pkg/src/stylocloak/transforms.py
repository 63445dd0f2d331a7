"""Adversarial style transforms: translation drift, imitation, obfuscation.

Every builtin stage is a pure function of (input, seed, options), so a whole
experiment grid can be replayed bit-for-bit.  Real machine translation and
neural text generation are deliberately out of process: a BackendSpec can
point at an external command or HTTP endpoint, and the builtin fallbacks
(synonym-pivot drift, a character Markov chain) keep everything runnable
offline.

All transforms strip zero-width content from their input first.  Transforms
always run before steganographic embedding, and scrubbing on entry
guarantees they can never corrupt a payload.
"""

from __future__ import annotations

import json
import random
import re
import shlex
import subprocess
import urllib.error
import urllib.request
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .styloscope import default_function_words
from .zwcodec import strip_zero_width

_WORD = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)*")
_SENTENCE_BOUNDARY = re.compile(r"(?<=[.?!])\s+")
_JITTER_TARGET = re.compile(r"([,;:]) ")

BACKEND_KINDS = ("builtin", "external-command", "http")


class BackendUnavailable(RuntimeError):
    """The external transform backend failed or returned garbage."""


class Timeout(BackendUnavailable):
    """The external transform backend did not answer in time."""


class CorpusTooSmall(ValueError):
    """Style-model training text is not longer than the context order."""


@dataclass(frozen=True)
class BackendSpec:
    """Where a transform stage runs: in process, a command, or an endpoint."""

    kind: str = "builtin"
    target: str = ""
    timeout: float = 30.0

    def __post_init__(self):
        if self.kind not in BACKEND_KINDS:
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind != "builtin" and not self.target:
            raise ValueError(f"backend kind {self.kind!r} requires a target")


@lru_cache(maxsize=1)
def load_synonyms() -> dict[str, tuple[str, ...]]:
    """The bundled synonym table as word -> substitution candidates.

    Groups are symmetric: every single-word member maps to the other members
    of its group (two-word phrases appear only as substitutions).  The first
    group to claim a word wins.
    """
    data = resources.files("stylocloak").joinpath("data/synonyms.txt")
    table: dict[str, tuple[str, ...]] = {}
    for line in data.read_text(encoding="utf-8").splitlines():
        members = [m.strip() for m in line.split(",") if m.strip()]
        for member in members:
            if " " in member or member in table:
                continue
            table[member] = tuple(m for m in members if m != member)
    return table


@lru_cache(maxsize=1)
def _function_word_set() -> frozenset[str]:
    return frozenset(default_function_words())


def _match_case(template: str, word: str) -> str:
    if template.isupper() and len(template) > 1:
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def split_sentences(text: str) -> list[str]:
    """Lossless sentence partition: breaks after [.?!] followed by whitespace.

    Each chunk keeps its trailing whitespace, so ``"".join`` restores the
    input exactly.  Abbreviations are not special-cased.
    """
    if not text:
        return []
    chunks = []
    start = 0
    for boundary in _SENTENCE_BOUNDARY.finditer(text):
        chunks.append(text[start : boundary.end()])
        start = boundary.end()
    if start < len(text):
        chunks.append(text[start:])
    return chunks


def sentence_count(text: str) -> int:
    return len(split_sentences(text))


def _substitute(text: str, rng: random.Random, rate: float) -> str:
    """Replace content words with dictionary synonyms at the given rate."""
    if rate <= 0.0:
        return text
    table = load_synonyms()
    function_words = _function_word_set()

    def repl(match: re.Match) -> str:
        word = match.group()
        low = word.lower()
        if low in function_words:
            return word
        candidates = table.get(low)
        if not candidates:
            return word
        if rate < 1.0 and rng.random() >= rate:
            return word
        return _match_case(word, rng.choice(candidates))

    return _WORD.sub(repl, text)


def round_trip_translate(
    text: str,
    chain: tuple[str, ...] = (),
    backend: BackendSpec | None = None,
    seed: int = 0,
) -> str:
    """Push text through a pivot-language chain and back, or simulate it.

    With an external backend the chain is the list of pivot languages.  The
    builtin fallback ignores the chain and applies seeded synonym-pivot
    drift instead: every content word with a dictionary entry is replaced,
    which approximates the lexical churn of a real round trip without any
    claim of meaning preservation.
    """
    backend = backend or BackendSpec()
    if backend.kind != "builtin":
        if not chain:
            raise ValueError("external translation requires a pivot chain")
        return call_backend(backend, text, chain, seed)
    clean, _ = strip_zero_width(text)
    return _substitute(clean, random.Random(seed), rate=1.0)


def call_backend(
    backend: BackendSpec, text: str, chain: tuple[str, ...], seed: int
) -> str:
    """Invoke an external backend with the {text, chain, seed} JSON contract.

    A command backend gets the request on stdin and must print {"text": ...}
    on stdout; an HTTP backend gets a POST and must answer 200 with the same
    shape.  Anything else raises BackendUnavailable (or Timeout), and the
    caller must abort the stage rather than pass the input through.
    """
    request = json.dumps({"text": text, "chain": list(chain), "seed": seed})
    if backend.kind == "external-command":
        try:
            proc = subprocess.run(
                shlex.split(backend.target),
                input=request.encode("utf-8"),
                capture_output=True,
                timeout=backend.timeout,
            )
        except subprocess.TimeoutExpired as exc:
            raise Timeout(f"command backend exceeded {backend.timeout}s") from exc
        except OSError as exc:
            raise BackendUnavailable(f"cannot run backend command: {exc}") from exc
        if proc.returncode != 0:
            raise BackendUnavailable(
                f"backend command exited {proc.returncode}: "
                f"{proc.stderr.decode('utf-8', 'replace').strip()}"
            )
        raw = proc.stdout
    elif backend.kind == "http":
        req = urllib.request.Request(
            backend.target,
            data=request.encode("utf-8"),
            headers={"Content-Type": "application/json"},
        )
        try:
            with urllib.request.urlopen(req, timeout=backend.timeout) as resp:
                if resp.status != 200:
                    raise BackendUnavailable(f"backend returned HTTP {resp.status}")
                raw = resp.read()
        except TimeoutError as exc:
            raise Timeout(f"http backend exceeded {backend.timeout}s") from exc
        except urllib.error.URLError as exc:
            if isinstance(getattr(exc, "reason", None), TimeoutError):
                raise Timeout(f"http backend exceeded {backend.timeout}s") from exc
            raise BackendUnavailable(f"http backend unreachable: {exc}") from exc
    else:
        raise BackendUnavailable("builtin backend has no external contract")
    try:
        reply = json.loads(raw.decode("utf-8"))
        result = reply["text"]
    except (ValueError, KeyError, UnicodeDecodeError) as exc:
        raise BackendUnavailable(f"backend reply is not {{'text': ...}}: {exc}") from exc
    if not isinstance(result, str):
        raise BackendUnavailable("backend reply 'text' is not a string")
    return result


@dataclass(frozen=True)
class StyleModel:
    """Character Markov chain over a training corpus."""

    order: int
    transitions: dict[str, dict[str, float]]
    trained_on: str = ""


def train_style_model(corpus_text: str, order: int = 3, corpus_id: str = "") -> StyleModel:
    """Count overlapping character windows and normalize to distributions."""
    if order < 1:
        raise ValueError("order must be >= 1")
    text, _ = strip_zero_width(corpus_text)
    if len(text) <= order:
        raise CorpusTooSmall(
            f"training text has {len(text)} characters, need more than {order}"
        )
    counts: dict[str, Counter] = {}
    for i in range(len(text) - order):
        context = text[i : i + order]
        counts.setdefault(context, Counter())[text[i + order]] += 1
    transitions = {
        context: {
            char: n / sum(followers.values())
            for char, n in sorted(followers.items())
        }
        for context, followers in sorted(counts.items())
    }
    return StyleModel(order=order, transitions=transitions, trained_on=corpus_id)


def imitate(model: StyleModel, length: int, seed: int = 0) -> str:
    """Sample text in the trained style, cut back to the last whole word.

    Deterministic for a fixed (model, length, seed).  Generation stops early
    if the chain walks into a context with no observed continuation.
    """
    if length <= 0:
        return ""
    if not model.transitions:
        raise ValueError("style model has no transitions")
    rng = random.Random(seed)
    contexts = sorted(model.transitions)
    out = list(rng.choice(contexts))
    while len(out) < length:
        context = "".join(out[-model.order :])
        followers = model.transitions.get(context)
        if not followers:
            break
        chars = list(followers)
        weights = list(followers.values())
        out.append(rng.choices(chars, weights=weights)[0])
    sample = "".join(out[:length])
    if sample and not sample[-1].isspace():
        cut = max((i for i, c in enumerate(sample) if c.isspace()), default=None)
        if cut is not None:
            sample = sample[:cut]
    return sample.rstrip()


def obfuscate(
    text: str,
    seed: int = 0,
    rate: float = 0.3,
    jitter: bool = False,
) -> str:
    """Shuffle sentence order and swap in synonyms at the given rate.

    Optional punctuation jitter pads a space before commas/semicolons that
    already have one after them.  Within each sentence the word multiset is
    preserved except for substituted synonyms, and the sentence count never
    changes.  Returns the input unchanged when nothing fired.
    """
    clean, _ = strip_zero_width(text)
    rng = random.Random(seed)
    chunks = split_sentences(clean)
    # A final fragment without a terminator stays pinned at the end: moving
    # it inward would merge it into the next sentence and change the count.
    movable = len(chunks)
    if chunks and chunks[-1].rstrip()[-1:] not in (".", "?", "!"):
        movable -= 1
    order = list(range(movable))
    if movable > 1:
        rng.shuffle(order)
    order += list(range(movable, len(chunks)))
    reordered = order != sorted(order)

    def process(chunk: str) -> str:
        result = _substitute(chunk, rng, rate)
        if jitter:
            result = _JITTER_TARGET.sub(
                lambda m: f" {m.group(1)} " if rng.random() < 0.5 else m.group(), result
            )
        return result

    pieces = [process(chunks[i]) for i in order]
    if reordered:
        # Chunks keep their own trailing whitespace; a piece that lost its
        # trailing run by moving to the former tail slot gets a space so the
        # following sentence still starts after whitespace.
        for idx in range(len(pieces) - 1):
            if not pieces[idx][-1:].isspace():
                pieces[idx] += " "
    return "".join(pieces)
