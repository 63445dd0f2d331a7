"""Command-line surface for the whole toolkit.

Exit codes: 0 success, 1 usage error, 2 data error (malformed stream, bad
corpus, bad config), 3 external backend failure.  Machine-readable output
goes to stdout, diagnostics to stderr.  Raw encoded streams are written as
real zero-width code points; pass --escaped to render them as U+XXXX for
terminals that mangle invisibles.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import pipeline, styloscope, transforms, weaver, zwcodec
from .pipeline import PipelineConfig, StageError, StageOptions, UnsupportedFormat
from .styloscope import Document, InsufficientCorpus, InvalidRange
from .transforms import BackendSpec, BackendUnavailable, Timeout
from .weaver import ContaminatedWord, EmptyWord, SecretOverflow
from .zwcodec import MalformedStream, UnsupportedCharacter

_DATA_ERRORS = (
    MalformedStream,
    UnsupportedCharacter,
    EmptyWord,
    ContaminatedWord,
    InvalidRange,
    InsufficientCorpus,
    UnsupportedFormat,
    transforms.CorpusTooSmall,
    json.JSONDecodeError,
    OSError,
    KeyError,
    ValueError,
)


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _escape(stream: str) -> str:
    points = zwcodec.DEFAULT_ALPHABET.points
    return "".join(f"U+{ord(c):04X}" if c in points else c for c in stream)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return zwcodec.read_text_file(path)


def _write_output(args, text: str) -> None:
    output = getattr(args, "output", None)
    if output and output != "-":
        zwcodec.write_text_file(output, text)
    else:
        sys.stdout.write(text)


def _message_from(args) -> str:
    if getattr(args, "payload_file", None):
        return zwcodec.read_text_file(args.payload_file).strip()
    if getattr(args, "message", None) is not None:
        return args.message
    raise ValueError("provide --message or --payload-file")


def _parse_ngrams(value: str) -> tuple[int, int]:
    low, _, high = value.partition("..")
    return int(low), int(high or low)


def _parse_backend_arg(spec: str) -> BackendSpec:
    if spec == "builtin":
        return BackendSpec()
    if spec.startswith("cmd:"):
        return BackendSpec(kind="external-command", target=spec[4:])
    if spec.startswith(("http://", "https://")):
        return BackendSpec(kind="http", target=spec)
    raise ValueError(f"cannot parse backend spec {spec!r}")


def cmd_encode(args) -> int:
    stream = zwcodec.encode_message(_message_from(args), strict=not args.lenient)
    sys.stdout.write(_escape(stream) if args.escaped else stream)
    sys.stdout.write("\n")
    return 0


def cmd_decode(args) -> int:
    text = _read_input(args.input)
    _, extracted = zwcodec.strip_zero_width(text)
    print(zwcodec.decode_stream(extracted))
    return 0


def cmd_strip(args) -> int:
    clean, extracted = zwcodec.strip_zero_width(_read_input(args.input))
    if args.payload_out:
        # raw stream dump: the carrier-file BOM refusal does not apply here,
        # a stream may legitimately start with the end marker
        with open(args.payload_out, "w", encoding="utf-8", newline="") as handle:
            handle.write(extracted)
    _write_output(args, clean)
    return 0


def cmd_scan(args) -> int:
    report = zwcodec.scan_text(_read_input(args.input))
    print(report.to_json())
    return 0


def cmd_weave(args) -> int:
    stream = zwcodec.encode_message(_message_from(args), strict=not args.lenient)
    woven = weaver.weave_into_unigram(args.word, stream, args.strategy)
    sys.stdout.write(_escape(woven.surface) if args.escaped else woven.surface)
    sys.stdout.write("\n")
    return 0


def cmd_embed_lines(args) -> int:
    text = _read_input(args.input)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SecretOverflow)
        result = weaver.embed_into_text(
            text, _message_from(args), strategy=args.strategy
        )
    for warning in caught:
        print(f"warning: {warning.message}", file=sys.stderr)
    _write_output(args, result)
    return 0


def cmd_extract_lines(args) -> int:
    print(weaver.extract_from_text(_read_input(args.input)))
    return 0


def cmd_transform(args) -> int:
    text = _read_input(args.input)
    backend = _parse_backend_arg(args.backend) if args.backend else None
    chain = tuple(args.chain.split(",")) if args.chain else ()
    if args.config_id is not None:
        options = StageOptions(
            substitution_rate=args.rate,
            punctuation_jitter=args.jitter,
            imitation_ratio=args.imitation_ratio,
            model_order=args.order,
            chain=chain,
        )
        backends = {"translation": backend} if backend is not None else {}
        config = PipelineConfig(
            id=args.config_id,
            seed=args.seed,
            payload=args.payload or "",
            backends=backends,
            options=options,
        )
        source = None
        if args.style_source:
            source = zwcodec.read_text_file(args.style_source)
        result = pipeline.apply_config(text, config, imitation_source=source)
    elif args.stage == "translation":
        result = transforms.round_trip_translate(text, chain, backend, args.seed)
    elif args.stage == "imitation":
        source = (
            zwcodec.read_text_file(args.style_source) if args.style_source else text
        )
        model = transforms.train_style_model(source, args.order)
        generated = transforms.imitate(
            model, round(len(text) * args.imitation_ratio), args.seed
        )
        result = f"{text} {generated}" if text and generated else text + generated
    elif args.stage == "obfuscation":
        result = transforms.obfuscate(text, args.seed, args.rate, args.jitter)
    else:
        raise ValueError("provide --stage or --config-id")
    _write_output(args, result)
    return 0


def cmd_features(args) -> int:
    corpus = styloscope.load_corpus(args.corpus)
    if args.candidate:
        corpus.documents.append(
            Document(id=args.candidate, text=zwcodec.read_text_file(args.candidate))
        )
    n_min, n_max = _parse_ngrams(args.ngrams)
    vectors = styloscope.extract_feature_vectors(
        corpus, n_min, n_max, strip=args.strip
    )
    payload = {
        doc_id: {
            "char_ngram_tfidf": vec.char_ngram_tfidf,
            "special_char_tfidf": vec.special_char_tfidf,
            "function_word_freq": vec.function_word_freq,
            "avg_chars_per_token": vec.avg_chars_per_token,
            "token_length_histogram": {
                str(k): v for k, v in vec.token_length_histogram.items()
            },
            "vocab_richness": vec.vocab_richness,
        }
        for doc_id, vec in vectors.items()
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_delta(args) -> int:
    corpus = styloscope.load_corpus(args.corpus)
    candidate = Document(
        id=args.candidate, text=zwcodec.read_text_file(args.candidate)
    )
    reports = {
        "candidate": styloscope.burrows_delta(corpus, candidate, args.k, strip=args.strip)
    }
    if args.reference:
        reference_doc = Document(
            id=args.reference, text=zwcodec.read_text_file(args.reference)
        )
        reports["reference"] = styloscope.burrows_delta(
            corpus, reference_doc, args.k, strip=args.strip
        )
    if args.format == "json":
        if len(reports) == 1:
            print(reports["candidate"].to_json())
        else:
            print(
                json.dumps(
                    {name: json.loads(r.to_json()) for name, r in reports.items()},
                    sort_keys=True,
                )
            )
    elif args.format == "csv":
        names = list(reports)
        print("author," + ",".join(f"delta_{n},probability_{n}" for n in names))
        for author in sorted(reports["candidate"].deltas):
            cells = []
            for name in names:
                cells.append(f"{reports[name].deltas[author]:.4f}")
                cells.append(f"{reports[name].probabilities[author]:.6f}")
            print(f"{author}," + ",".join(cells))
    elif args.format == "markdown":
        names = list(reports)
        header = "| Author |" + "".join(
            f" Burrows' Delta ({n}) | Probability ({n}) |" for n in names
        )
        print(header)
        print("|---|" + "---|" * (2 * len(names)))
        for author in sorted(reports["candidate"].deltas):
            cells = []
            for name in names:
                cells.append(f"{reports[name].deltas[author]:.4f}")
                cells.append(f"{reports[name].probabilities[author]:.6f}")
            print(f"| {author} | " + " | ".join(cells) + " |")
    else:
        raise UnsupportedFormat(f"unknown report format {args.format!r}")
    return 0


def cmd_matrix(args) -> int:
    spec = pipeline.load_matrix_spec(args.config)
    strip = spec.strip or args.strip
    report = pipeline.run_matrix(
        spec.candidate,
        spec.reference,
        list(spec.configs),
        k=spec.k,
        strip=strip,
        imitation_source=spec.imitation_source,
        ngram_range=spec.ngram_range,
    )
    rendered = pipeline.emit_report(report, args.format)
    if args.output and args.output != "-":
        zwcodec.write_text_file(args.output, rendered)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(rendered)
        if not rendered.endswith("\n"):
            sys.stdout.write("\n")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="stylocloak", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("encode", cmd_encode, "encode a message as a zero-width stream")
    p.add_argument("--message")
    p.add_argument("--payload-file")
    p.add_argument("--escaped", action="store_true")
    p.add_argument("--lenient", action="store_true", help="drop unsupported characters")

    p = add("decode", cmd_decode, "decode the zero-width stream found in a text")
    p.add_argument("input", nargs="?", default="-")

    p = add("strip", cmd_strip, "remove zero-width payload from a carrier")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--output", "-o")
    p.add_argument("--payload-out", help="also save the extracted stream here")

    p = add("scan", cmd_scan, "report zero-width code point occurrences as JSON")
    p.add_argument("input", nargs="?", default="-")

    p = add("weave", cmd_weave, "interleave an encoded message inside one word")
    p.add_argument("--word", required=True)
    p.add_argument("--message")
    p.add_argument("--payload-file")
    p.add_argument("--strategy", choices=weaver.STRATEGIES, default="round_robin")
    p.add_argument("--escaped", action="store_true")
    p.add_argument("--lenient", action="store_true")

    p = add("embed-lines", cmd_embed_lines, "hide one secret letter per line")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--message")
    p.add_argument("--payload-file")
    p.add_argument("--output", "-o")
    p.add_argument("--strategy", choices=weaver.STRATEGIES, default="round_robin")

    p = add("extract-lines", cmd_extract_lines, "recover a line-wise hidden secret")
    p.add_argument("input", nargs="?", default="-")

    p = add("transform", cmd_transform, "apply one stage or a whole numbered config")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--stage", choices=("translation", "imitation", "obfuscation"))
    p.add_argument("--config-id", type=int, help="run pipeline config 1..15 instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rate", type=float, default=0.3, help="obfuscation synonym rate")
    p.add_argument("--jitter", action="store_true", help="punctuation spacing jitter")
    p.add_argument("--imitation-ratio", type=float, default=0.25)
    p.add_argument("--order", type=int, default=3, help="style model context length")
    p.add_argument("--style-source", help="training text for the imitation stage")
    p.add_argument("--chain", help="comma-separated pivot languages")
    p.add_argument("--backend", help="builtin | cmd:<command> | http(s)://<url>")
    p.add_argument("--payload", help="secret letters for the steganography stage")
    p.add_argument("--output", "-o")

    p = add("features", cmd_features, "extract lexical feature vectors as JSON")
    p.add_argument("--corpus", required=True)
    p.add_argument("--candidate", help="score an extra unlabeled document too")
    p.add_argument("--ngrams", default="2..4", metavar="MIN..MAX")
    p.add_argument("--strip", action="store_true")

    p = add("delta", cmd_delta, "Burrows' Delta of a candidate against a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--candidate", required=True)
    p.add_argument("--reference", help="also score this untransformed text")
    p.add_argument("--k", type=int, default=50)
    p.add_argument("--strip", action="store_true")
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")

    p = add("matrix", cmd_matrix, "run a config grid from a JSON run file")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.add_argument("--output", "-o")
    p.add_argument("--strip", action="store_true")

    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (BackendUnavailable, Timeout) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 3
    except StageError as exc:
        if isinstance(exc.cause, BackendUnavailable):
            print(f"backend error: {exc}", file=sys.stderr)
            return 3
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
