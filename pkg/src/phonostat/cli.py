"""Command-line front end: ``phonostat <command> [options]``.

Exit codes: 0 success, 2 I/O error, 3 parse or configuration error,
4 empty corpus (or too few symbols for the requested metrics).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .corpus import DiacriticMode, aggregate, load_corpus, normalize, read_manifest
from .errors import EmptyCorpusError, ModeMismatchError, ParameterError, RuleParseError, UndefinedMetricError
from .hypothesis import Hypothesis, evaluate, parse_hypothesis, table_hypotheses
from .metrics import SD_MODES, compute_metrics, zipf_baseline
from .report import DEFAULT_GAP_THRESHOLD, AnalysisRun, build_run, compare, detect_gaps, dump_json, render, run_to_dict
from .transducer import BUILTIN_RULESETS, RuleSet, apply_rules, builtin_rules, lint_rules, load_rules

EXIT_OK = 0
EXIT_IO = 2
EXIT_CONFIG = 3
EXIT_EMPTY = 4


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _complain(f"{self.prog}: {message}")
        sys.exit(EXIT_CONFIG)


def _use_color() -> bool:
    if os.environ.get("PHONOSTAT_NO_COLOR") or os.environ.get("NO_COLOR"):
        return False
    return sys.stderr.isatty()


def _complain(msg: str) -> None:
    if _use_color():
        msg = f"\x1b[31m{msg}\x1b[0m"
    print(msg, file=sys.stderr)


@dataclass
class RunConfig:
    inputs: list[Path] = field(default_factory=list)
    manifest: Path | None = None
    rules: RuleSet | None = None
    diacritic_rules: RuleSet | None = None
    hypotheses: list[Hypothesis] = field(default_factory=list)
    diacritics: bool = False
    sd: str = "sample"
    gap_threshold: float = DEFAULT_GAP_THRESHOLD
    fmt: str = "csv"
    out: Path | None = None
    width: int = 720
    height: int = 400

    def paths(self) -> list[Path]:
        if bool(self.inputs) == bool(self.manifest):
            raise ConfigError("give either input files or --manifest, not both or neither")
        return read_manifest(self.manifest) if self.manifest else self.inputs

    def active_rules(self) -> RuleSet:
        if self.diacritics:
            return self.diacritic_rules or builtin_rules("reference-diacritic")
        return self.rules or builtin_rules("reference")


def _split_list(values: list[str] | None) -> list[str]:
    return [v.strip() for chunk in values or [] for v in chunk.split(",") if v.strip()]


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        inputs=[Path(p) for p in getattr(args, "inputs", []) or []],
        manifest=Path(args.manifest) if getattr(args, "manifest", None) else None,
        diacritics=getattr(args, "diacritics", "off") == "on",
        sd=getattr(args, "sd", "sample"),
        gap_threshold=getattr(args, "gap_threshold", DEFAULT_GAP_THRESHOLD),
        fmt=getattr(args, "format", "csv"),
        out=Path(args.out) if getattr(args, "out", None) else None,
        width=getattr(args, "width", 720),
        height=getattr(args, "height", 400),
    )
    if getattr(args, "rules", None):
        rs = load_rules(args.rules)
    elif getattr(args, "builtin", None):
        rs = builtin_rules(args.builtin)
    else:
        rs = None
    if rs is not None:
        if rs.mode is DiacriticMode.PRESERVE_I_ACUTE:
            cfg.diacritic_rules = rs
        else:
            cfg.rules = rs
    if cfg.gap_threshold <= 1:
        raise ConfigError("--gap-threshold must exceed 1")
    if cfg.width < 100 or cfg.height < 100:
        raise ConfigError("--width and --height must be at least 100")

    names = _split_list(getattr(args, "hypothesis", None))
    merge = _split_list(getattr(args, "merge", None))
    hyps: list[Hypothesis] = []
    for name in names:
        if name == "all":
            hyps.extend(table_hypotheses())
        elif name == "merge":
            if not merge:
                raise ConfigError("hypothesis 'merge' needs --merge SYMS")
            hyps.append(Hypothesis.merge(merge))
        else:
            hyps.append(parse_hypothesis(name))
    if merge and "merge" not in names:
        hyps.append(Hypothesis.merge(merge))
    cfg.hypotheses = hyps or [Hypothesis.from_kind("identity")]
    return cfg


def _write(cfg: RunConfig, data: bytes, path: Path | None = None) -> None:
    path = path or cfg.out
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        path.write_bytes(data)


def _corpus(cfg: RunConfig):
    return aggregate(load_corpus(cfg.paths()))


def _runs(cfg: RunConfig) -> list[AnalysisRun]:
    doc = _corpus(cfg)
    runs = []
    for h in cfg.hypotheses:
        counts = evaluate(doc, h, rules=cfg.rules, diacritic_rules=cfg.diacritic_rules, diacritics=cfg.diacritics)
        runs.append(build_run(doc.id, h.name, counts, cfg.sd, cfg.gap_threshold))
    return runs


def cmd_phonemize(cfg: RunConfig) -> int:
    rules = cfg.active_rules()
    doc = _corpus(cfg)
    p = apply_rules(normalize(doc, rules.mode), rules)
    _write(cfg, (p.text.strip() + "\n").encode("utf-8"))
    return EXIT_OK


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


def cmd_analyze(cfg: RunConfig) -> int:
    runs = _runs(cfg)
    if cfg.fmt == "json":
        _write(cfg, dump_json([run_to_dict(r) for r in runs]))
    elif cfg.fmt == "csv":
        if len(runs) == 1:
            _write(cfg, render(runs[0], "csv"))
        else:
            blocks = [f"# corpus={r.corpus_id} hypothesis={r.hypothesis}\n".encode() + render(r, "csv") for r in runs]
            _write(cfg, b"\n".join(blocks))
    else:
        if len(runs) == 1:
            _write(cfg, render(runs[0], "svg", cfg.width, cfg.height))
        elif cfg.out is None:
            raise ConfigError("several svg plots need --out; one file per hypothesis is written next to it")
        else:
            for r in runs:
                path = cfg.out.with_name(f"{cfg.out.stem}.{_safe(r.hypothesis)}{cfg.out.suffix or '.svg'}")
                _write(cfg, render(r, "svg", cfg.width, cfg.height), path)
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    table = compare(_runs(cfg))
    _write(cfg, render(table, cfg.fmt, cfg.width, cfg.height))
    return EXIT_OK


def cmd_zipf(cfg: RunConfig, n: int) -> int:
    dist = zipf_baseline(n)
    run = AnalysisRun(
        corpus_id=f"zipf-{n}",
        hypothesis="zipf",
        distribution=dist,
        metrics=compute_metrics(dist, cfg.sd),
        gaps=tuple(detect_gaps(dist, cfg.gap_threshold)),
    )
    _write(cfg, render(run, cfg.fmt, cfg.width, cfg.height))
    return EXIT_OK


def cmd_rules_check(ruleset: RuleSet) -> int:
    print(f"{ruleset.name}: {len(ruleset)} rules, mode {ruleset.mode.value}")
    for problem in lint_rules(ruleset):
        print(f"warning: {problem}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, analysis: bool = True) -> None:
    p.add_argument("inputs", nargs="*", help="UTF-8 text files (aggregated)")
    p.add_argument("--manifest", help="file listing one corpus path per line")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--rules", metavar="PATH", help="rule file")
    src.add_argument("--builtin", metavar="NAME", choices=sorted(BUILTIN_RULESETS), help="builtin rule set")
    p.add_argument("--diacritics", choices=("on", "off"), default="off", help="keep the accent on i (default off)")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    if not analysis:
        return
    p.add_argument("--hypothesis", action="append", metavar="NAME[,NAME...]",
                   help="identity, raw-letters, w-split, wj-split, wj-split-diacritic, diphthongs-all, "
                        "diphthongs-iu, merge, merge:A+B, or 'all' for the seven table scenarios")
    p.add_argument("--merge", action="append", metavar="SYMS", help="comma-separated symbols to merge, e.g. t,d")
    _add_output(p)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sd", choices=SD_MODES, default="sample", help="standard deviation used by smoothness")
    p.add_argument("--gap-threshold", type=float, default=DEFAULT_GAP_THRESHOLD, help="minimum F(n)/F(n+1) ratio reported as a gap")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--width", type=int, default=720, help="svg width in pixels")
    p.add_argument("--height", type=int, default=400, help="svg height in pixels")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phonostat", description="Rank-frequency tests of phoneme-inventory hypotheses.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("phonemize", help="normalize and transduce text, print the phoneme string")
    _add_common(p, analysis=False)

    p = sub.add_parser("analyze", help="one rank-frequency run per hypothesis")
    _add_common(p)

    p = sub.add_parser("compare", help="comparison table over hypotheses")
    _add_common(p)

    p = sub.add_parser("zipf", help="emit a Zipfian baseline distribution")
    p.add_argument("n", type=int, help="number of symbols")
    p.add_argument("--out", metavar="PATH")
    _add_output(p)

    p = sub.add_parser("rules-check", help="parse and lint a rule file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("path", nargs="?", help="rule file")
    g.add_argument("--builtin", choices=sorted(BUILTIN_RULESETS))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "rules-check":
            ruleset = builtin_rules(args.builtin) if args.builtin else load_rules(args.path)
            return cmd_rules_check(ruleset)
        cfg = config_from_args(args)
        if args.command == "zipf":
            return cmd_zipf(cfg, args.n)
        return {"phonemize": cmd_phonemize, "analyze": cmd_analyze, "compare": cmd_compare}[args.command](cfg)
    except OSError as exc:
        _complain(f"phonostat: {exc}")
        return EXIT_IO
    except (RuleParseError, ParameterError, ModeMismatchError, ConfigError, KeyError) as exc:
        _complain(f"phonostat: {exc}")
        return EXIT_CONFIG
    except (EmptyCorpusError, UndefinedMetricError) as exc:
        _complain(f"phonostat: {exc}")
        return EXIT_EMPTY


if __name__ == "__main__":
    sys.exit(main())
