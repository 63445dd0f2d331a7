import json
import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stylocloak import zwcodec
from stylocloak.zwcodec import (
    BIT0,
    BIT1,
    END,
    SEP,
    DEFAULT_ALPHABET,
    MalformedStream,
    UnsupportedCharacter,
    ZeroWidthAlphabet,
    build_codebook,
    decode_stream,
    encode_message,
    scan_text,
    strip_zero_width,
)

letters = st.text(alphabet=string.ascii_uppercase, max_size=300)


def binary_by_hand(n):
    # division-loop oracle, independent of format()
    if n == 0:
        return "0"
    bits = ""
    while n:
        bits = str(n % 2) + bits
        n //= 2
    return bits


def test_codebook_canonical_values():
    cb = build_codebook()
    assert cb.forward["A"] == "0"
    assert cb.forward["B"] == binary_by_hand(1) == "1"
    assert cb.forward["Z"] == binary_by_hand(25) == "11001"
    for i, letter in enumerate(string.ascii_uppercase):
        assert cb.forward[letter] == binary_by_hand(i)


def test_codebook_reverse_is_exact_inverse():
    cb = build_codebook()
    assert len(cb.reverse) == 26
    for letter, bits in cb.forward.items():
        assert cb.reverse[bits] == letter


def test_alphabet_code_points_distinct_and_zero_width():
    assert len({BIT0, BIT1, SEP, END}) == 4
    assert DEFAULT_ALPHABET.points == frozenset((BIT0, BIT1, SEP, END))
    with pytest.raises(ValueError):
        ZeroWidthAlphabet(bit0=BIT1)  # collides with bit1
    with pytest.raises(ValueError):
        ZeroWidthAlphabet(bit0="x")  # visible


def test_encode_single_letter():
    assert encode_message("A") == BIT0 + END


def test_encode_two_letters_joined_by_separator():
    # concatenation per codebook: A="0", B="1"
    assert encode_message("AB") == BIT0 + SEP + BIT1 + END


def test_encode_empty_is_bare_end_marker():
    assert encode_message("") == END


def test_encode_uppercases_input():
    assert encode_message("ab") == encode_message("AB")


def test_encode_strict_rejects_non_letters():
    with pytest.raises(UnsupportedCharacter) as exc:
        encode_message("A!B")
    assert exc.value.position == 1
    assert exc.value.char == "!"


def test_encode_lenient_drops_non_letters_with_warning():
    with pytest.warns(zwcodec.DroppedCharacters) as caught:
        assert encode_message("A !B", strict=False) == encode_message("AB")
    assert caught[0].message.count == 2


def test_decode_examples():
    assert decode_stream(BIT0 + END) == "A"
    assert decode_stream(BIT0 + SEP + BIT1 + END) == "AB"
    # binary 25 = 11001
    assert decode_stream(BIT1 + BIT1 + BIT0 + BIT0 + BIT1 + END) == "Z"


def test_decode_rejects_foreign_code_point():
    with pytest.raises(MalformedStream, match="foreign"):
        decode_stream("x" + END)


def test_decode_rejects_missing_end():
    with pytest.raises(MalformedStream, match="end marker"):
        decode_stream(BIT0)
    with pytest.raises(MalformedStream, match="end marker"):
        decode_stream("")


def test_decode_rejects_unknown_bit_group():
    # 11111 = 31, past Z
    with pytest.raises(MalformedStream, match="unknown bit-group"):
        decode_stream(BIT1 * 5 + END)
    # empty group from doubled separator
    with pytest.raises(MalformedStream, match="unknown bit-group"):
        decode_stream(BIT0 + SEP + SEP + BIT0 + END)


def test_decode_ignores_content_after_first_end():
    assert decode_stream(BIT0 + END + BIT1 + END) == "A"


def test_encode_decode_known_word():
    stream = encode_message("ENSHITTIFICATION")
    assert decode_stream(stream) == "ENSHITTIFICATION"


@given(letters)
def test_round_trip(message):
    assert decode_stream(encode_message(message)) == message


def test_round_trip_long_message():
    message = (string.ascii_uppercase * 200)[:4096]
    assert decode_stream(encode_message(message)) == message


@given(letters)
def test_stream_purity(message):
    stream = encode_message(message)
    assert set(stream) <= DEFAULT_ALPHABET.points
    assert stream.count(END) == 1 and stream.endswith(END)


@given(letters)
def test_determinism(message):
    assert encode_message(message) == encode_message(message)


def test_strip_clean_text():
    assert strip_zero_width("cat") == ("cat", "")


def test_strip_separates_payload_preserving_order():
    text = "c" + BIT0 + "at" + END
    assert strip_zero_width(text) == ("cat", BIT0 + END)


def test_strip_reconstruction_by_offsets():
    text = "a" + BIT1 + "b" + SEP + END + "c"
    clean, extracted = strip_zero_width(text)
    assert clean == "abc"
    assert extracted == BIT1 + SEP + END
    # interleaving at original offsets rebuilds the text
    rebuilt = []
    ci = ei = 0
    for ch in text:
        if ch in DEFAULT_ALPHABET.points:
            rebuilt.append(extracted[ei])
            ei += 1
        else:
            rebuilt.append(clean[ci])
            ci += 1
    assert "".join(rebuilt) == text


def test_scan_clean_text():
    report = scan_text("hello")
    assert report.verdict is False
    assert all(count == 0 for count in report.counts.values())
    assert report.offsets == []


def test_scan_counts_encoded_message():
    report = scan_text(encode_message("AB"))
    assert report.counts == {BIT0: 1, BIT1: 1, SEP: 1, END: 1}
    assert report.verdict is True


def test_scan_offsets_are_utf8_byte_positions_strictly_increasing():
    text = "héllo" + BIT0 + "x" + END
    report = scan_text(text)
    offsets = [off for off, _ in report.offsets]
    assert offsets == sorted(offsets) and len(set(offsets)) == len(offsets)
    raw = text.encode("utf-8")
    for off, char in report.offsets:
        assert raw[off:].decode("utf-8").startswith(char)


def test_scan_json_shape():
    payload = json.loads(scan_text("a" + BIT0).to_json())
    assert set(payload) == {"counts", "offsets", "verdict"}
    assert payload["verdict"] is True
    assert payload["counts"]["U+200B"] == 1


text_with_noise = st.text(
    alphabet=st.sampled_from(string.printable + BIT0 + BIT1 + SEP + END),
    max_size=200,
)


@given(text_with_noise)
def test_scanner_matches_strip(text):
    report = scan_text(text)
    _, extracted = strip_zero_width(text)
    assert report.verdict == (len(extracted) > 0)
    assert sum(report.counts.values()) == len(extracted)


def test_write_refuses_leading_bom(tmp_path):
    target = tmp_path / "out.txt"
    with pytest.raises(MalformedStream, match="byte-order mark"):
        zwcodec.write_text_file(target, END + "text")


def test_file_round_trip_preserves_crlf_and_payload(tmp_path):
    target = tmp_path / "doc.txt"
    text = "one" + BIT0 + END + "\r\ntwo\nthree\r\n"
    zwcodec.write_text_file(target, text)
    assert zwcodec.read_text_file(target) == text
    assert target.read_bytes().count(b"\r\n") == 2
