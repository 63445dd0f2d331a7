"""Zero-width Unicode codec: hide A-Z messages in invisible code points.

Four zero-width code points carry the payload: two act as binary digits,
one separates letters, one terminates the stream.  Each letter A-Z is
encoded as the minimal binary form of its alphabetical index (A=0 -> "0",
B=1 -> "1", ..., Z=25 -> "11001"); letters are delimited by the separator,
so variable-length codes need no prefix property.

No Unicode normalization is ever applied here: NFC/NFKC would destroy
payloads, so carrier and stream text are treated as raw code-point
sequences throughout.
"""

from __future__ import annotations

import json
import string
import warnings
from collections import Counter
from dataclasses import dataclass, field

BIT0 = "​"  # ZERO WIDTH SPACE
BIT1 = "‌"  # ZERO WIDTH NON-JOINER
SEP = "‍"   # ZERO WIDTH JOINER, delimits letters
END = "﻿"   # ZERO WIDTH NO-BREAK SPACE, terminates a stream


class UnsupportedCharacter(ValueError):
    """A character outside A-Z (after uppercasing) was given in strict mode."""

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(
            f"unsupported character {char!r} (U+{ord(char):04X}) at position {position}"
        )


class MalformedStream(ValueError):
    """A zero-width stream could not be decoded."""


class DroppedCharacters(UserWarning):
    """Lenient encoding discarded characters outside A-Z."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"dropped {count} unsupported character(s)")


@dataclass(frozen=True)
class ZeroWidthAlphabet:
    """The four invisible code points and their roles."""

    bit0: str = BIT0
    bit1: str = BIT1
    sep: str = SEP
    end: str = END

    def __post_init__(self):
        points = (self.bit0, self.bit1, self.sep, self.end)
        if len(set(points)) != 4:
            raise ValueError("alphabet code points must be pairwise distinct")
        for p in points:
            if len(p) != 1 or p not in ZERO_WIDTH_SET:
                raise ValueError(f"{p!r} is not a known zero-width code point")

    @property
    def points(self) -> frozenset[str]:
        return frozenset((self.bit0, self.bit1, self.sep, self.end))


# Code points with no advance width that an alphabet may draw from.
ZERO_WIDTH_SET = frozenset({BIT0, BIT1, SEP, END, "⁠", "᠎"})

DEFAULT_ALPHABET = ZeroWidthAlphabet()


@dataclass(frozen=True)
class Codebook:
    """Letter -> bit-string mapping and its exact inverse."""

    forward: dict[str, str]
    reverse: dict[str, str] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.reverse is None:
            object.__setattr__(
                self, "reverse", {bits: letter for letter, bits in self.forward.items()}
            )
        if len(self.reverse) != len(self.forward):
            raise ValueError("codebook is not injective")
        for bits in self.forward.values():
            if not bits or set(bits) - {"0", "1"}:
                raise ValueError(f"invalid bit-string {bits!r}")


def build_codebook() -> Codebook:
    """Canonical codebook: letter i maps to minimal binary of i, A="0"."""
    forward = {
        letter: format(index, "b")
        for index, letter in enumerate(string.ascii_uppercase)
    }
    return Codebook(forward=forward)


DEFAULT_CODEBOOK = build_codebook()


def encode_message(
    plaintext: str,
    codebook: Codebook = DEFAULT_CODEBOOK,
    alphabet: ZeroWidthAlphabet = DEFAULT_ALPHABET,
    strict: bool = True,
) -> str:
    """Encode a letter sequence into a pure zero-width stream.

    Input is uppercased first.  Each letter's bit-string is emitted as
    bit0/bit1 code points, letters are joined with the separator, and the
    stream ends with exactly one end marker.  Empty input yields a stream
    containing only the end marker.

    In strict mode a non A-Z character raises :class:`UnsupportedCharacter`;
    in lenient mode such characters are dropped under a
    :class:`DroppedCharacters` warning.
    """
    bit_chars = {"0": alphabet.bit0, "1": alphabet.bit1}
    groups = []
    dropped = 0
    for position, char in enumerate(plaintext):
        letter = char.upper()
        bits = codebook.forward.get(letter)
        if bits is None:
            if strict:
                raise UnsupportedCharacter(position, char)
            dropped += 1
            continue
        groups.append("".join(bit_chars[b] for b in bits))
    if dropped:
        warnings.warn(DroppedCharacters(dropped), stacklevel=2)
    return alphabet.sep.join(groups) + alphabet.end


def decode_stream(
    stream: str,
    codebook: Codebook = DEFAULT_CODEBOOK,
    alphabet: ZeroWidthAlphabet = DEFAULT_ALPHABET,
) -> str:
    """Decode a zero-width stream back into uppercase letters.

    The stream is read up to the first end marker; letters are recovered by
    splitting on the separator and looking each bit-group up in the reverse
    codebook.  Raises :class:`MalformedStream` for a foreign code point,
    a missing end marker, or an unknown bit-group.
    """
    foreign = set(stream) - alphabet.points
    if foreign:
        sample = sorted(foreign)[0]
        raise MalformedStream(
            f"foreign code point U+{ord(sample):04X} in stream"
        )
    body, end_marker, _ = stream.partition(alphabet.end)
    if not end_marker:
        raise MalformedStream("stream does not contain an end marker")
    if not body:
        return ""
    bit_names = {alphabet.bit0: "0", alphabet.bit1: "1"}
    letters = []
    for group in body.split(alphabet.sep):
        bits = "".join(bit_names.get(c, "?") for c in group)
        letter = codebook.reverse.get(bits)
        if letter is None:
            raise MalformedStream(f"unknown bit-group {bits!r}")
        letters.append(letter)
    return "".join(letters)


def strip_zero_width(
    text: str, alphabet: ZeroWidthAlphabet = DEFAULT_ALPHABET
) -> tuple[str, str]:
    """Split text into (clean, extracted): visible carrier and payload.

    The extracted stream preserves the original relative order of the
    alphabet code points; interleaving clean and extracted at their original
    offsets reconstructs the input exactly.
    """
    points = alphabet.points
    clean = []
    extracted = []
    for char in text:
        (extracted if char in points else clean).append(char)
    return "".join(clean), "".join(extracted)


@dataclass(frozen=True)
class ScanReport:
    """Occurrence report for zero-width code points in a text."""

    counts: dict[str, int]
    offsets: list[tuple[int, str]]
    verdict: bool

    def to_json(self) -> str:
        payload = {
            "counts": {f"U+{ord(c):04X}": n for c, n in sorted(self.counts.items())},
            "offsets": [[off, f"U+{ord(c):04X}"] for off, c in self.offsets],
            "verdict": self.verdict,
        }
        return json.dumps(payload, sort_keys=True)


def scan_text(text: str, alphabet: ZeroWidthAlphabet = DEFAULT_ALPHABET) -> ScanReport:
    """Locate every alphabet code point; offsets are UTF-8 byte positions."""
    points = alphabet.points
    counts: Counter[str] = Counter()
    offsets: list[tuple[int, str]] = []
    byte_offset = 0
    for char in text:
        if char in points:
            counts[char] += 1
            offsets.append((byte_offset, char))
        byte_offset += len(char.encode("utf-8"))
    counts_full = {p: counts.get(p, 0) for p in sorted(points)}
    return ScanReport(
        counts=counts_full,
        offsets=offsets,
        verdict=any(counts.values()),
    )


def read_text_file(path) -> str:
    """Read a UTF-8 file as raw code points, without newline translation.

    A leading U+FEFF is *not* stripped: it would be indistinguishable from
    payload content, and well-formed carriers never start with one.
    """
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return handle.read()


def write_text_file(path, text: str) -> None:
    """Write UTF-8 without newline translation; refuse a leading U+FEFF.

    A byte-order mark at file start would collide with the end-marker code
    point, so texts that begin with U+FEFF are rejected outright.
    """
    if text.startswith(END):
        raise MalformedStream(
            "refusing to write text starting with U+FEFF: "
            "a leading byte-order mark would be indistinguishable from payload"
        )
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
