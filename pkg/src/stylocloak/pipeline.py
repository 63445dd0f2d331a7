"""Run the 15-configuration transform grid and report stylometric impact.

Configuration IDs are frozen to the canonical enumeration so that a
discussion of, say, "config 3" always means obfuscation-only:

     1 imitation                        9 steganography+imitation
     2 translation                     10 steganography+translation
     3 obfuscation                     11 steganography+obfuscation
     4 imitation+translation           12 steganography+imitation+translation
     5 imitation+obfuscation           13 steganography+imitation+obfuscation
     6 translation+obfuscation         14 steganography+translation+obfuscation
     7 imitation+translation+          15 all four
       obfuscation
     8 steganography

Whatever the declared set, stages always execute in the fixed order
translation -> imitation -> obfuscation -> steganography.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

from . import transforms, weaver
from .styloscope import Corpus, Document, burrows_delta, load_corpus
from .transforms import BackendSpec, StyleModel

CANONICAL_ORDER = ("translation", "imitation", "obfuscation", "steganography")

CONFIG_STAGES: dict[int, tuple[str, ...]] = {
    1: ("imitation",),
    2: ("translation",),
    3: ("obfuscation",),
    4: ("translation", "imitation"),
    5: ("imitation", "obfuscation"),
    6: ("translation", "obfuscation"),
    7: ("translation", "imitation", "obfuscation"),
    8: ("steganography",),
    9: ("imitation", "steganography"),
    10: ("translation", "steganography"),
    11: ("obfuscation", "steganography"),
    12: ("translation", "imitation", "steganography"),
    13: ("imitation", "obfuscation", "steganography"),
    14: ("translation", "obfuscation", "steganography"),
    15: ("translation", "imitation", "obfuscation", "steganography"),
}


class UnsupportedFormat(ValueError):
    """Requested report format is not one of json/csv/markdown."""


class StageError(RuntimeError):
    """A pipeline stage failed; carries the stage name and the cause."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")


@dataclass(frozen=True)
class StageOptions:
    """Tunables shared by the transform stages."""

    substitution_rate: float = 0.3
    punctuation_jitter: bool = False
    imitation_ratio: float = 0.25
    model_order: int = 3
    chain: tuple[str, ...] = ()
    weave_strategy: str = "round_robin"


@dataclass(frozen=True)
class PipelineConfig:
    """One cell of the experiment grid: a stage set plus its knobs."""

    id: int
    seed: int = 0
    payload: str = ""
    stages: tuple[str, ...] = ()
    backends: dict[str, BackendSpec] = field(default_factory=dict)
    options: StageOptions = StageOptions()

    def __post_init__(self):
        expected = CONFIG_STAGES.get(self.id)
        if expected is None:
            raise ValueError(f"config id must be 1..15, got {self.id}")
        if self.stages and set(self.stages) != set(expected):
            raise ValueError(
                f"config {self.id} means stages {sorted(expected)}, "
                f"got {sorted(set(self.stages))}"
            )
        object.__setattr__(self, "stages", expected)


def stage_seed(base_seed: int, config_id: int, stage: str) -> int:
    """Stable per-stage seed so grid cells never share RNG streams."""
    digest = hashlib.sha256(f"{base_seed}:{config_id}:{stage}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def apply_config(
    text: str,
    config: PipelineConfig,
    imitation_source: str | None = None,
    style_model: StyleModel | None = None,
) -> str:
    """Run the configured stages over the text in canonical order.

    The imitation stage trains on ``imitation_source`` (the input text
    itself when not given) unless a pre-trained ``style_model`` is supplied.
    An empty stage set is the identity.
    """
    opts = config.options
    for stage in config.stages:
        seed = stage_seed(config.seed, config.id, stage)
        try:
            if stage == "translation":
                text = transforms.round_trip_translate(
                    text, opts.chain, config.backends.get(stage), seed
                )
            elif stage == "imitation":
                model = style_model
                if model is None:
                    model = transforms.train_style_model(
                        imitation_source if imitation_source is not None else text,
                        opts.model_order,
                    )
                generated = transforms.imitate(
                    model, round(len(text) * opts.imitation_ratio), seed
                )
                if generated:
                    text = f"{text} {generated}" if text else generated
            elif stage == "obfuscation":
                text = transforms.obfuscate(
                    text, seed, opts.substitution_rate, opts.punctuation_jitter
                )
            elif stage == "steganography":
                text = weaver.embed_into_text(
                    text, config.payload, strategy=opts.weave_strategy
                )
        except Exception as exc:
            raise StageError(stage, exc) from exc
    return text


@dataclass(frozen=True)
class MatrixRow:
    """One (config, author) cell of the comparison matrix."""

    config: int
    author: str
    delta_adversarial: float
    delta_reference: float
    probability_adversarial: float
    probability_reference: float
    delta_change: float


@dataclass(frozen=True)
class MatrixReport:
    rows: tuple[MatrixRow, ...]
    errors: tuple[dict, ...]
    metadata: dict


def run_matrix(
    candidate: Document,
    reference: Corpus,
    configs: list[PipelineConfig],
    k: int = 50,
    function_words: list[str] | None = None,
    strip: bool = False,
    imitation_source: str | None = None,
    ngram_range: tuple[int, int] = (2, 4),
) -> MatrixReport:
    """Transform the candidate under every config and score both versions.

    The reference columns come from the untransformed candidate, so they are
    constant across configs for each author.  A config whose stage fails is
    recorded under ``errors`` (status "aborted") and the rest of the grid
    still runs; a failed external backend is never silently replaced by the
    builtin fallback.
    """
    base_report = burrows_delta(reference, candidate, k, function_words, strip)
    rows: list[MatrixRow] = []
    errors: list[dict] = []
    for config in configs:
        try:
            transformed = apply_config(
                candidate.text,
                config,
                imitation_source=imitation_source or candidate.text,
            )
            adv_doc = Document(id=f"{candidate.id}#config{config.id}", text=transformed)
            adv_report = burrows_delta(reference, adv_doc, k, function_words, strip)
        except StageError as exc:
            errors.append(
                {
                    "config": config.id,
                    "stage": exc.stage,
                    "status": "aborted",
                    "error": str(exc.cause),
                }
            )
            continue
        for author in sorted(base_report.deltas):
            rows.append(
                MatrixRow(
                    config=config.id,
                    author=author,
                    delta_adversarial=adv_report.deltas[author],
                    delta_reference=base_report.deltas[author],
                    probability_adversarial=adv_report.probabilities[author],
                    probability_reference=base_report.probabilities[author],
                    delta_change=base_report.deltas[author]
                    - adv_report.deltas[author],
                )
            )
    metadata = {
        "config_ids": [c.id for c in configs],
        "seeds": {str(c.id): c.seed for c in configs},
        "payload": configs[0].payload if configs else "",
        "backends": {
            str(c.id): {s: f"{b.kind}:{b.target}" for s, b in sorted(c.backends.items())}
            for c in configs
            if c.backends
        },
        "k": k,
        "strip": strip,
        "ngram_range": list(ngram_range),
        "reference_hash": reference.content_hash(),
        "candidate_hash": hashlib.sha256(candidate.text.encode("utf-8")).hexdigest(),
    }
    return MatrixReport(rows=tuple(rows), errors=tuple(errors), metadata=metadata)


_CSV_COLUMNS = (
    "config",
    "author",
    "delta_adversarial",
    "delta_reference",
    "probability_adversarial",
    "probability_reference",
    "delta_change",
)


def emit_report(report: MatrixReport, fmt: str = "json") -> str:
    """Serialize a matrix report; field order is stable across runs."""
    if fmt == "json":
        payload = {
            "metadata": report.metadata,
            "rows": [asdict(row) for row in report.rows],
            "errors": list(report.errors),
        }
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(_CSV_COLUMNS)
        for row in report.rows:
            writer.writerow(
                [
                    row.config,
                    row.author,
                    f"{row.delta_adversarial:.4f}",
                    f"{row.delta_reference:.4f}",
                    f"{row.probability_adversarial:.6f}",
                    f"{row.probability_reference:.6f}",
                    f"{row.delta_change:.4f}",
                ]
            )
        return buffer.getvalue()
    if fmt == "markdown":
        lines = [
            "| Config | Author | Burrows' Delta (adversarial) | "
            "Burrows' Delta (reference) | P(adversarial) | P(reference) | Delta change |",
            "|---|---|---|---|---|---|---|",
        ]
        for row in report.rows:
            lines.append(
                f"| {row.config} | {row.author} | {row.delta_adversarial:.4f} | "
                f"{row.delta_reference:.4f} | {row.probability_adversarial:.6f} | "
                f"{row.probability_reference:.6f} | {row.delta_change:.4f} |"
            )
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown report format {fmt!r}")


@dataclass(frozen=True)
class MatrixSpec:
    """Parsed matrix run description: corpora, grid, and options."""

    candidate: Document
    reference: Corpus
    configs: tuple[PipelineConfig, ...]
    k: int = 50
    strip: bool = False
    imitation_source: str | None = None
    ngram_range: tuple[int, int] = (2, 4)


def _parse_backend(value) -> BackendSpec:
    if isinstance(value, dict):
        return BackendSpec(**value)
    if value == "builtin":
        return BackendSpec()
    if isinstance(value, str) and value.startswith("cmd:"):
        return BackendSpec(kind="external-command", target=value[4:])
    if isinstance(value, str) and value.startswith(("http://", "https://")):
        return BackendSpec(kind="http", target=value)
    raise ValueError(f"cannot parse backend spec {value!r}")


def load_matrix_spec(path) -> MatrixSpec:
    """Read a declarative JSON run file.

    Recognized keys: corpus (directory), candidate (file), configs (list of
    ids), seed, payload, k, ngrams ([min, max]), strip, backends (stage ->
    spec), options (StageOptions fields), imitation_source (file).
    """
    path = Path(path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    base = path.parent

    def resolve(p) -> Path:
        p = Path(p)
        return p if p.is_absolute() else base / p

    reference = load_corpus(resolve(raw["corpus"]))
    candidate_path = resolve(raw["candidate"])
    candidate = Document(
        id=candidate_path.name,
        text=candidate_path.read_text(encoding="utf-8"),
    )
    backends = {
        stage: _parse_backend(spec) for stage, spec in raw.get("backends", {}).items()
    }
    options = StageOptions(
        **{**raw.get("options", {}), "chain": tuple(raw.get("chain", ()))}
    )
    seed = int(raw.get("seed", 0))
    payload = raw.get("payload", "")
    configs = tuple(
        PipelineConfig(
            id=int(cid),
            seed=seed,
            payload=payload,
            backends=backends,
            options=options,
        )
        for cid in raw.get("configs", sorted(CONFIG_STAGES))
    )
    imitation_source = None
    if raw.get("imitation_source"):
        imitation_source = resolve(raw["imitation_source"]).read_text(encoding="utf-8")
    ngrams = raw.get("ngrams", [2, 4])
    return MatrixSpec(
        candidate=candidate,
        reference=reference,
        configs=configs,
        k=int(raw.get("k", 50)),
        strip=bool(raw.get("strip", False)),
        imitation_source=imitation_source,
        ngram_range=(int(ngrams[0]), int(ngrams[1])),
    )
