"""Experiment configuration: an indentation-based YAML-subset parser and
the binding of parsed trees to validated experiment configs.

The subset covers what experiment files actually need -- block mappings,
block sequences, typed scalars, comments, quoted strings -- with a fixed
2-space indentation step. A hand-written grammar this small behaves
identically everywhere, which matters because config files are part of an
artifact's reproducibility story. Flow collections ([...], {...}),
anchors, aliases, and multi-document streams are rejected as
"UnsupportedSyntax".

Parsed trees are plain Python values: dict (insertion-ordered mapping),
list, str, int, float, bool, None.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .core import TaskKind
from .errors import AtsError

_INT_RE = re.compile(r"^[+-]?\d+$")
_FLOAT_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")
_PLAIN_OUT_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_./ -]*$")

INDENT_STEP = 2


@dataclass(frozen=True)
class _Line:
    no: int
    indent: int
    content: str


def _strip_comment(raw: str, no: int) -> str:
    """Drop a trailing comment; '#' starts one at line start or after a space,
    outside quotes."""
    out = []
    quote: str | None = None
    i = 0
    while i < len(raw):
        ch = raw[i]
        if quote:
            if quote == '"' and ch == "\\":
                out.append(raw[i : i + 2])
                i += 2
                continue
            if ch == quote:
                quote = None
            out.append(ch)
        elif ch in ("'", '"'):
            quote = ch
            out.append(ch)
        elif ch == "#" and (not out or out[-1].endswith(" ") or all(c.isspace() for c in raw[:i])):
            break
        else:
            out.append(ch)
        i += 1
    return "".join(out).rstrip()


def _scan_lines(text: str) -> list[_Line]:
    lines: list[_Line] = []
    for no, raw in enumerate(text.split("\n"), start=1):
        raw = raw.rstrip("\r")
        body = raw.lstrip(" ")
        indent = len(raw) - len(body)
        if body.startswith("\t") or "\t" in raw[:indent]:
            raise AtsError("TabIndent", "tab character in indentation", line=no)
        content = _strip_comment(body, no)
        if not content:
            continue
        if content.startswith("---"):
            raise AtsError("UnsupportedSyntax", "multi-document streams are not supported", line=no)
        if content.startswith("%"):
            raise AtsError("UnsupportedSyntax", "directives are not supported", line=no)
        lines.append(_Line(no, indent, content))
    return lines


def _unquote(s: str, no: int) -> str:
    quote = s[0]
    if len(s) < 2 or s[-1] != quote:
        raise AtsError("UnsupportedSyntax", f"unterminated {quote} string", line=no)
    body = s[1:-1]
    if quote == "'":
        if "'" in body.replace("''", ""):
            raise AtsError("UnsupportedSyntax", "unterminated ' string", line=no)
        return body.replace("''", "'")
    out = []
    i = 0
    escapes = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r", "/": "/"}
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            if i + 1 >= len(body) or body[i + 1] not in escapes:
                raise AtsError("UnsupportedSyntax", f"unknown escape in string: {body[i:i+2]!r}", line=no)
            out.append(escapes[body[i + 1]])
            i += 2
        elif ch == '"':
            raise AtsError("UnsupportedSyntax", "unescaped quote inside string", line=no)
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _typed_scalar(s: str, no: int):
    """Apply the subset's scalar typing rules to a plain value string."""
    if s[0] in ("'", '"'):
        return _unquote(s, no)
    if s[0] in ("[", "{"):
        raise AtsError("UnsupportedSyntax", "flow-style collections are not supported", line=no)
    if s[0] in ("&", "*"):
        raise AtsError("UnsupportedSyntax", "anchors and aliases are not supported", line=no)
    if s[0] in ("|", ">"):
        raise AtsError("UnsupportedSyntax", "block scalars are not supported", line=no)
    if s == "true":
        return True
    if s == "false":
        return False
    if s == "null":
        return None
    if _INT_RE.match(s):
        return int(s)
    if _FLOAT_RE.match(s):
        return float(s)
    return s


def _split_key(content: str) -> tuple[str, str] | None:
    """Split 'key: value' / 'key:' at the first unquoted colon followed by
    a space or end of line. Returns None for non-key lines."""
    quote: str | None = None
    i = 0
    while i < len(content):
        ch = content[i]
        if quote:
            if quote == '"' and ch == "\\":
                i += 2
                continue
            if ch == quote:
                quote = None
        elif ch in ("'", '"'):
            quote = ch
        elif ch == ":" and (i + 1 == len(content) or content[i + 1] == " "):
            return content[:i].strip(), content[i + 1 :].strip()
        i += 1
    return None


def _is_dash_item(content: str) -> bool:
    return content == "-" or content.startswith("- ")


class _Parser:
    def __init__(self, lines: list[_Line]):
        self.lines = lines
        self.i = 0

    def peek(self) -> _Line | None:
        return self.lines[self.i] if self.i < len(self.lines) else None

    def parse_block(self, indent: int):
        """Parse the block whose lines sit at exactly ``indent``."""
        line = self.peek()
        if line is None:
            return None
        if line.indent != indent:
            raise AtsError(
                "BadIndent",
                f"expected indent {indent}, got {line.indent}",
                line=line.no,
            )
        if _is_dash_item(line.content):
            return self.parse_sequence(indent)
        if _split_key(line.content) is not None:
            return self.parse_mapping(indent)
        return self.parse_plain_scalar(indent)

    def parse_mapping(self, indent: int) -> dict:
        result: dict = {}
        while True:
            line = self.peek()
            if line is None or line.indent < indent:
                return result
            if line.indent > indent:
                raise AtsError("BadIndent", f"unexpected indent {line.indent}", line=line.no)
            kv = _split_key(line.content)
            if kv is None:
                raise AtsError("UnsupportedSyntax", f"expected 'key:' line, got {line.content!r}", line=line.no)
            key, value_str = kv
            if not key:
                raise AtsError("UnsupportedSyntax", "empty mapping key", line=line.no)
            if key in result:
                raise AtsError("DuplicateKey", f"duplicate key {key!r}", line=line.no)
            self.i += 1
            if value_str:
                if _is_dash_item(value_str):
                    raise AtsError(
                        "UnsupportedSyntax", "inline sequence items are not supported", line=line.no
                    )
                value = _typed_scalar(value_str, line.no)
                nxt = self.peek()
                if nxt is not None and nxt.indent > indent:
                    raise AtsError("BadIndent", "indented block under a scalar value", line=nxt.no)
            else:
                nxt = self.peek()
                if nxt is None or nxt.indent <= indent:
                    value = None
                else:
                    if nxt.indent != indent + INDENT_STEP:
                        raise AtsError(
                            "BadIndent",
                            f"expected indent {indent + INDENT_STEP}, got {nxt.indent}",
                            line=nxt.no,
                        )
                    value = self.parse_block(indent + INDENT_STEP)
            result[key] = value

    def parse_sequence(self, indent: int) -> list:
        result: list = []
        while True:
            line = self.peek()
            if line is None or line.indent < indent:
                return result
            if line.indent > indent:
                raise AtsError("BadIndent", f"unexpected indent {line.indent}", line=line.no)
            if not _is_dash_item(line.content):
                raise AtsError(
                    "UnsupportedSyntax", f"expected '- ' item, got {line.content!r}", line=line.no
                )
            if line.content == "-":
                self.i += 1
                nxt = self.peek()
                if nxt is None or nxt.indent <= indent:
                    result.append(None)
                else:
                    if nxt.indent != indent + INDENT_STEP:
                        raise AtsError(
                            "BadIndent",
                            f"expected indent {indent + INDENT_STEP}, got {nxt.indent}",
                            line=nxt.no,
                        )
                    result.append(self.parse_block(indent + INDENT_STEP))
            else:
                # Treat '- rest' as 'rest' at the item indent; following
                # deeper lines belong to the same item.
                rest = line.content[2:].lstrip(" ")
                self.lines[self.i] = _Line(line.no, indent + INDENT_STEP, rest)
                result.append(self.parse_block(indent + INDENT_STEP))

    def parse_plain_scalar(self, indent: int):
        """One or more plain lines at this indent join into one scalar
        (single-line values in practice; folding mirrors plain YAML)."""
        parts = []
        first_no = self.peek().no
        while True:
            line = self.peek()
            if line is None or line.indent < indent:
                break
            if line.indent > indent:
                raise AtsError("BadIndent", f"unexpected indent {line.indent}", line=line.no)
            if _split_key(line.content) is not None or _is_dash_item(line.content):
                break
            parts.append(line.content)
            self.i += 1
        return _typed_scalar(" ".join(parts), first_no)


def parse_config(text: str):
    """Parse config text into plain Python values (dict/list/scalars)."""
    lines = _scan_lines(text)
    if not lines:
        return None
    parser = _Parser(lines)
    node = parser.parse_block(0)
    trailing = parser.peek()
    if trailing is not None:
        raise AtsError("BadIndent", f"unexpected content {trailing.content!r}", line=trailing.no)
    return node


def _serialize_scalar(value) -> str:
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("non-finite floats cannot be serialized")
        return repr(value)
    if isinstance(value, str):
        plain_safe = (
            _PLAIN_OUT_RE.match(value)
            and not value.endswith(" ")
            and value not in ("true", "false", "null")
            and not _INT_RE.match(value)
            and not _FLOAT_RE.match(value)
        )
        if plain_safe:
            return value
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        escaped = escaped.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
        return f'"{escaped}"'
    raise ValueError(f"cannot serialize {type(value).__name__}")


def _serialize_block(node, indent: int, out: list[str]) -> None:
    pad = " " * indent
    if isinstance(node, dict):
        if not node:
            raise ValueError("empty mappings cannot be serialized in block style")
        for key, value in node.items():
            if isinstance(value, (dict, list)):
                out.append(f"{pad}{key}:")
                _serialize_block(value, indent + INDENT_STEP, out)
            else:
                out.append(f"{pad}{key}: {_serialize_scalar(value)}")
    elif isinstance(node, list):
        if not node:
            raise ValueError("empty sequences cannot be serialized in block style")
        for item in node:
            if isinstance(item, dict):
                if not item:
                    raise ValueError("empty mappings cannot be serialized in block style")
                first, *rest = item.items()
                key, value = first
                if isinstance(value, (dict, list)):
                    raise ValueError("nested containers as first item value are not serializable")
                out.append(f"{pad}- {key}: {_serialize_scalar(value)}")
                if rest:
                    _serialize_block(dict(rest), indent + INDENT_STEP, out)
            elif isinstance(item, list):
                raise ValueError("sequences of sequences are not serializable")
            else:
                out.append(f"{pad}- {_serialize_scalar(item)}")
    else:
        out.append(f"{pad}{_serialize_scalar(node)}")


def serialize_config(node) -> str:
    """Canonical text for a config tree; parse(serialize(x)) == x."""
    out: list[str] = []
    _serialize_block(node, 0, out)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Binding: parsed tree -> validated ExperimentConfig
# ---------------------------------------------------------------------------

PROFILER_TYPES = ("FeatureRegressor", "FeatureClassifier")
DATASET_TYPES = ("tsv", "asap-aes")
TOKENIZER_TYPES = ("whitespace", "char")
FEATURE_TYPES = ("token_count", "avg_token_length", "unigram_likelihood", "doc_embedding")
LEARNER_TYPES = ("ridge", "logistic", "random_forest")

DEFAULT_SEED = 42

_LEARNER_PARAM_SPECS: dict[str, dict[str, tuple[type, object]]] = {
    # param -> (expected type, default); int params reject bools/floats.
    "ridge": {"l2": (float, 0.0)},
    "logistic": {"lr": (float, 0.1), "epochs": (int, 2000), "l2": (float, 1e-4)},
    "random_forest": {
        "n_estimators": (int, 100),
        "max_depth": (int, 5),
        "min_samples_split": (int, 2),
        "features_per_split": (int, None),
        "n_jobs": (int, 1),
    },
}

_FEATURE_PARAM_SPECS: dict[str, dict[str, tuple[type, object]]] = {
    "token_count": {},
    "avg_token_length": {},
    "unigram_likelihood": {"table_path": (str, None)},
    "doc_embedding": {"vectors_path": (str, None)},
}

_FEATURE_REQUIRED: dict[str, tuple[str, ...]] = {
    "unigram_likelihood": ("table_path",),
    "doc_embedding": ("vectors_path",),
}


@dataclass(frozen=True)
class LearnerConfig:
    type: str
    params: dict


@dataclass(frozen=True)
class FeatureConfig:
    type: str
    params: dict


@dataclass(frozen=True)
class ProfilerConfig:
    type: str
    learner: LearnerConfig
    features: tuple[FeatureConfig, ...]
    tokenizer_type: str = "whitespace"
    tokenizer_lowercase: bool = False
    standardize: bool | None = None  # None: by learner kind
    seed: int = DEFAULT_SEED
    output_normalized: bool = False


@dataclass(frozen=True)
class DatasetSourceConfig:
    type: str
    path: str
    prompt: int | None = None
    lo: int | None = None
    hi: int | None = None


@dataclass
class ExperimentConfig:
    """Validated experiment: what to train, on what data, for which task."""

    task: TaskKind
    profiler: ProfilerConfig
    dataset: DatasetSourceConfig
    source_text: str | None = None
    base_dir: Path | None = None

    def resolve_path(self, p: str) -> Path:
        """Paths in config files are relative to the config file itself."""
        path = Path(p)
        if not path.is_absolute() and self.base_dir is not None:
            return self.base_dir / path
        return path


def _expect_mapping(node, path: str) -> dict:
    if not isinstance(node, dict):
        raise AtsError("BadParam", f"{path} must be a mapping")
    return node


def _pop_typed(params: dict, key: str, expected: type, default, path: str):
    if key not in params:
        return default
    value = params.pop(key)
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, expected) or (isinstance(value, bool) and expected is not bool):
        raise AtsError("BadParam", f"{path}.{key} must be {expected.__name__}, got {value!r}")
    return value


def _bind_params(node, specs: dict, required: tuple[str, ...], path: str) -> dict:
    params = dict(_expect_mapping(node, path)) if node is not None else {}
    bound = {}
    for key, (expected, default) in specs.items():
        bound[key] = _pop_typed(params, key, expected, default, path)
    if params:
        raise AtsError("BadParam", f"unknown key {sorted(params)[0]!r} under {path}")
    for key in required:
        if bound.get(key) is None:
            raise AtsError("BadParam", f"{path}.{key} is required")
    return bound


def _unknown_type(kind: str, got: str, valid: tuple[str, ...]) -> AtsError:
    message = f"unknown {kind} type {got!r}; valid: {', '.join(valid)}"
    if isinstance(got, str) and "transformer" in got.lower():
        message += " (transformer profilers are not supported by this toolkit)"
    return AtsError("UnknownType", message)


def bind_experiment(node) -> ExperimentConfig:
    """Validate a parsed tree and fill documented defaults."""
    root = _expect_mapping(node, "config")
    for section in ("task", "profiler", "dataset"):
        if section not in root:
            raise AtsError("MissingSection", f"missing required section {section!r}")

    task_str = root["task"]
    if task_str not in ("regression", "classification"):
        raise AtsError("BadParam", f"task must be regression or classification, got {task_str!r}")
    task = TaskKind(task_str)

    prof_node = _expect_mapping(root["profiler"], "profiler")
    prof_type = prof_node.get("type")
    if prof_type not in PROFILER_TYPES:
        raise _unknown_type("profiler", prof_type, PROFILER_TYPES)
    prof_params = dict(_expect_mapping(prof_node.get("params"), "profiler.params")) if prof_node.get("params") is not None else {}

    learner_node = prof_params.pop("learner", None)
    if learner_node is None:
        raise AtsError("BadParam", "profiler.params.learner is required")
    learner_map = _expect_mapping(learner_node, "profiler.params.learner")
    learner_type = learner_map.get("type")
    if learner_type not in LEARNER_TYPES:
        raise _unknown_type("learner", learner_type, LEARNER_TYPES)
    learner_params = _bind_params(
        learner_map.get("params"),
        _LEARNER_PARAM_SPECS[learner_type],
        (),
        "profiler.params.learner.params",
    )
    extra = set(learner_map) - {"type", "params"}
    if extra:
        raise AtsError("BadParam", f"unknown key {sorted(extra)[0]!r} under profiler.params.learner")

    features_node = prof_params.pop("features", None)
    if not features_node:
        raise AtsError("BadParam", "profiler.params.features must list at least one feature")
    if not isinstance(features_node, list):
        raise AtsError("BadParam", "profiler.params.features must be a sequence")
    features = []
    for idx, item in enumerate(features_node):
        fpath = f"profiler.params.features[{idx}]"
        fmap = _expect_mapping(item, fpath)
        ftype = fmap.get("type")
        if ftype not in FEATURE_TYPES:
            raise _unknown_type("feature", ftype, FEATURE_TYPES)
        fparams = _bind_params(
            fmap.get("params"), _FEATURE_PARAM_SPECS[ftype], _FEATURE_REQUIRED.get(ftype, ()), fpath
        )
        extra = set(fmap) - {"type", "params"}
        if extra:
            raise AtsError("BadParam", f"unknown key {sorted(extra)[0]!r} under {fpath}")
        features.append(FeatureConfig(ftype, fparams))

    tok_node = prof_params.pop("tokenizer", None)
    tok_type = "whitespace"
    tok_lower = False
    if tok_node is not None:
        tok_map = _expect_mapping(tok_node, "profiler.params.tokenizer")
        tok_type = tok_map.get("type", "whitespace")
        if tok_type not in TOKENIZER_TYPES:
            raise _unknown_type("tokenizer", tok_type, TOKENIZER_TYPES)
        tok_lower = _pop_typed(dict(tok_map), "lowercase", bool, False, "profiler.params.tokenizer")
        extra = set(tok_map) - {"type", "lowercase"}
        if extra:
            raise AtsError("BadParam", f"unknown key {sorted(extra)[0]!r} under profiler.params.tokenizer")

    standardize = _pop_typed(prof_params, "standardize", bool, None, "profiler.params")
    seed = _pop_typed(prof_params, "seed", int, DEFAULT_SEED, "profiler.params")
    output_normalized = _pop_typed(prof_params, "output_normalized", bool, False, "profiler.params")
    if prof_params:
        raise AtsError("BadParam", f"unknown key {sorted(prof_params)[0]!r} under profiler.params")

    ds_node = _expect_mapping(root["dataset"], "dataset")
    ds_type = ds_node.get("type")
    if ds_type not in DATASET_TYPES:
        raise _unknown_type("dataset", ds_type, DATASET_TYPES)
    ds_params = dict(_expect_mapping(ds_node.get("params"), "dataset.params")) if ds_node.get("params") is not None else {}
    path = _pop_typed(ds_params, "path", str, None, "dataset.params")
    if path is None:
        raise AtsError("BadParam", "dataset.params.path is required")
    prompt = _pop_typed(ds_params, "prompt", int, None, "dataset.params")
    lo = _pop_typed(ds_params, "lo", int, None, "dataset.params")
    hi = _pop_typed(ds_params, "hi", int, None, "dataset.params")
    if ds_params:
        raise AtsError("BadParam", f"unknown key {sorted(ds_params)[0]!r} under dataset.params")
    if ds_type == "asap-aes" and prompt is None:
        raise AtsError("BadParam", "dataset.params.prompt is required for asap-aes")

    extra = set(root) - {"task", "profiler", "dataset"}
    if extra:
        raise AtsError("BadParam", f"unknown top-level section {sorted(extra)[0]!r}")

    return ExperimentConfig(
        task=task,
        profiler=ProfilerConfig(
            type=prof_type,
            learner=LearnerConfig(learner_type, learner_params),
            features=tuple(features),
            tokenizer_type=tok_type,
            tokenizer_lowercase=tok_lower,
            standardize=standardize,
            seed=seed,
            output_normalized=output_normalized,
        ),
        dataset=DatasetSourceConfig(type=ds_type, path=path, prompt=prompt, lo=lo, hi=hi),
    )


def load_experiment(path: str | Path) -> ExperimentConfig:
    """Parse and bind a config file; relative paths resolve against it."""
    text = Path(path).read_text(encoding="utf-8")
    cfg = bind_experiment(parse_config(text))
    cfg.source_text = text
    cfg.base_dir = Path(path).resolve().parent
    return cfg
