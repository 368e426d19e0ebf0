"""Batch command line: ``polywn <subcommand> --config run.ini [overrides]``.

The config file holds flat dotted keys, one ``key = value`` per line, with
``#`` comments.  Relative paths are resolved against the config file's
directory.  Command-line flags override config values.  Logs go to standard
error; results are written under ``--out``.

Exit status: 0 success, 1 invalid usage or configuration, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .align import (
    Dataset,
    align,
    kfold_evaluate,
    load_embeddings,
    load_entities,
    load_gold_links,
    load_model,
    train_on_gold,
    write_alignment,
)
from .corpus import PIVOT, build_index, load_index, load_parallel_dir, save_index
from .disambig import DisambigConfig, disambiguated_contexts, write_context_dump
from .lexicon import check_language, load_wordnet, write_wordnet_tsv
from .metrics import evaluate_lexicon, write_eval_rows
from .translate import load_phrase_table, translate_wordnet

log = logging.getLogger("polywn")

PATH_KEYS = {
    "wordnet.lemmas", "wordnet.definitions", "wordnet.relations",
    "corpus.dir", "index.file",
    "translate.phrase_table",
    "evaluate.hypothesis", "evaluate.gold",
    "align.left", "align.right", "align.gold", "align.embeddings", "align.model",
}
TEXT_KEYS = {"corpus.languages", "disambig.witnesses", "translate.language", "evaluate.language", "align.lang", "stats.languages"}
INT_KEYS = {"seed": (0, None), "jobs": (1, None), "disambig.n_min": (1, None), "disambig.m": (1, None),
            "translate.t": (1, None), "index.max_n": (1, None), "align.setting": (1, 8), "cv.k": (2, None)}
FLOAT_KEYS = {"align.threshold": (0.0, 1.0), "align.alpha": (0.0, None)}
BOOL_KEYS = {"translate.disambiguate"}

DEFAULTS = {
    "seed": 0, "jobs": 1, "disambig.n_min": 2, "disambig.m": 10, "translate.t": 5, "index.max_n": 4,
    "align.setting": 4, "cv.k": 10, "align.threshold": 0.5, "align.alpha": 1.0, "align.lang": "en",
    "translate.disambiguate": True,
}

# flag dest -> config key
OVERRIDES = {
    "seed": "seed", "jobs": "jobs", "n_min": "disambig.n_min", "m": "disambig.m", "t": "translate.t",
    "threshold": "align.threshold", "alpha": "align.alpha", "setting": "align.setting",
    "max_n": "index.max_n", "k": "cv.k",
}


class ConfigError(Exception):
    """Invalid configuration or usage; maps to exit status 1."""


@dataclass
class RunConfig:
    values: dict = field(default_factory=dict)
    base_dir: str = "."
    out_dir: str = "."

    def get(self, key: str, default=None):
        return self.values.get(key, DEFAULTS.get(key, default))

    def path(self, key: str, required: bool = True) -> Optional[str]:
        raw = self.values.get(key)
        if raw is None:
            if required:
                raise ConfigError(f"missing config key {key!r}")
            return None
        p = raw if os.path.isabs(raw) else os.path.join(self.base_dir, raw)
        if not os.path.exists(p):
            raise ConfigError(f"{key}: no such file or directory: {p}")
        return p

    def languages(self, key: str, required: bool = True) -> Optional[list[str]]:
        raw = self.values.get(key)
        if raw is None:
            if required:
                raise ConfigError(f"missing config key {key!r}")
            return None
        langs = [x.strip() for x in raw.split(",") if x.strip()]
        for lang in langs:
            try:
                check_language(lang)
            except ValueError as exc:
                raise ConfigError(f"{key}: {exc}") from None
        return langs

    def language(self, key: str) -> str:
        langs = self.languages(key)
        if len(langs) != 1:
            raise ConfigError(f"{key} must name exactly one language")
        return langs[0]

    def out(self, name: str) -> str:
        os.makedirs(self.out_dir, exist_ok=True)
        return os.path.join(self.out_dir, name)


def _coerce(key: str, raw):
    if key in INT_KEYS:
        try:
            value = int(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
        lo, hi = INT_KEYS[key]
        if value < lo or (hi is not None and value > hi):
            raise ConfigError(f"{key}={value} outside the allowed range")
        return value
    if key in FLOAT_KEYS:
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{key} must be a number, got {raw!r}") from None
        lo, hi = FLOAT_KEYS[key]
        if value < lo or (hi is not None and value > hi) or (key == "align.alpha" and value <= 0):
            raise ConfigError(f"{key}={value} outside the allowed range")
        return value
    if key in BOOL_KEYS:
        if isinstance(raw, bool):
            return raw
        text = str(raw).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key} must be true or false, got {raw!r}")
    if key in PATH_KEYS or key in TEXT_KEYS:
        return str(raw).strip().strip('"')
    raise ConfigError(f"unknown config key {key!r}")


def read_config(path: Optional[str]) -> tuple[dict, str]:
    if path is None:
        return {}, os.getcwd()
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",), inline_comment_prefixes=("#",))
    parser.optionxform = str
    with open(path, encoding="utf-8") as fh:
        try:
            parser.read_string("[run]\n" + fh.read(), source=path)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from None
    values = {key: _coerce(key, raw) for key, raw in parser["run"].items()}
    return values, os.path.dirname(os.path.abspath(path))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    values, base = read_config(args.config)
    for dest, key in OVERRIDES.items():
        flag = getattr(args, dest, None)
        if flag is not None:
            values[key] = _coerce(key, flag)
    if getattr(args, "no_disambiguate", False):
        values["translate.disambiguate"] = False
    return RunConfig(values, base, args.out)


# --- loaders ---------------------------------------------------------------

def _wordnet(cfg: RunConfig):
    return load_wordnet(cfg.path("wordnet.lemmas"), cfg.path("wordnet.definitions", False),
                        cfg.path("wordnet.relations", False))


def _corpus(cfg: RunConfig):
    return load_parallel_dir(cfg.path("corpus.dir"), cfg.languages("corpus.languages"))


def _index(cfg: RunConfig, corpus):
    prebuilt = cfg.path("index.file", False)
    if prebuilt is not None:
        with open(prebuilt, "rb") as fh:
            index = load_index(fh)
        if index.n_tuples != len(corpus):
            raise ValueError(f"index covers {index.n_tuples} tuples but the corpus has {len(corpus)}")
        return index
    return build_index(corpus, cfg.get("index.max_n"))


def _disambig_config(cfg: RunConfig) -> DisambigConfig:
    return DisambigConfig(cfg.get("disambig.n_min"), cfg.get("disambig.m"), cfg.get("seed"))


def _datasets(cfg: RunConfig):
    left = Dataset(load_entities(cfg.path("align.left")))
    right = Dataset(load_entities(cfg.path("align.right")))
    return left, right


def _embeddings(cfg: RunConfig):
    p = cfg.path("align.embeddings", False)
    return None if p is None else load_embeddings(p)


def _open_out(cfg: RunConfig, name: str):
    return open(cfg.out(name), "w", encoding="utf-8", newline="\n")


# --- subcommands -----------------------------------------------------------

def cmd_index(cfg: RunConfig) -> None:
    corpus = _corpus(cfg)
    index = build_index(corpus, cfg.get("index.max_n"))
    with open(cfg.out("index.bin"), "wb") as fh:
        save_index(index, fh)
    log.info("indexed %d tuples in %d languages", len(corpus), len(corpus.languages))


def cmd_disambiguate(cfg: RunConfig) -> None:
    wn = _wordnet(cfg)
    corpus = _corpus(cfg)
    index = _index(cfg, corpus)
    witnesses = cfg.languages("disambig.witnesses", False)
    n_min = cfg.get("disambig.n_min")
    senses = list(wn.senses(PIVOT))

    def work(sense):
        return [(sense, ctx) for ctx in disambiguated_contexts(wn, corpus, index, sense, n_min, witnesses)]

    jobs = cfg.get("jobs")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(work, senses))
    else:
        chunks = [work(s) for s in senses]
    with _open_out(cfg, "contexts.tsv") as fh:
        for rows in chunks:
            write_context_dump(rows, fh)
    log.info("wrote %d contexts for %d senses", sum(map(len, chunks)), len(senses))


def cmd_translate(cfg: RunConfig) -> None:
    lang = cfg.language("translate.language")
    wn = _wordnet(cfg)
    corpus = _corpus(cfg)
    index = _index(cfg, corpus)
    backend = load_phrase_table(cfg.path("translate.phrase_table"), lang)
    run = translate_wordnet(
        wn, corpus, index, backend, lang, _disambig_config(cfg), cfg.get("translate.t"),
        jobs=cfg.get("jobs"), disambiguate=cfg.get("translate.disambiguate"),
        witness_languages=cfg.languages("disambig.witnesses", False),
    )
    with _open_out(cfg, f"lexicon.{lang}.tsv") as fh:
        write_wordnet_tsv(run.lexicon, fh)
    with _open_out(cfg, "report.json") as fh:
        run.write_report(fh)


def cmd_evaluate(cfg: RunConfig) -> None:
    if "evaluate.language" in cfg.values:
        lang = cfg.language("evaluate.language")
    else:
        lang = cfg.language("translate.language")
    hyp_path = cfg.path("evaluate.hypothesis", False)
    if hyp_path is None:
        hyp_path = os.path.join(cfg.out_dir, f"lexicon.{lang}.tsv")
        if not os.path.exists(hyp_path):
            raise ConfigError(f"evaluate.hypothesis not set and {hyp_path} does not exist")
    hyp = load_wordnet(hyp_path)
    gold = load_wordnet(cfg.path("evaluate.gold"))
    row = evaluate_lexicon(hyp, gold, lang)
    with _open_out(cfg, "eval.tsv") as tsv, _open_out(cfg, "eval.json") as js:
        write_eval_rows([row], tsv, js)
    sys.stdout.write(row.tsv() + "\n")


def cmd_stats(cfg: RunConfig) -> None:
    wn = _wordnet(cfg)
    langs = cfg.languages("stats.languages", False) or wn.languages()
    with _open_out(cfg, "stats.tsv") as fh:
        fh.write("lang\tsynsets\twords\tsenses\n")
        for lang in langs:
            s = wn.stats(lang)
            fh.write(f"{lang}\t{s['synsets']}\t{s['words']}\t{s['senses']}\n")


def _align_params(cfg: RunConfig) -> dict:
    return {
        "table": _embeddings(cfg),
        "alpha": cfg.get("align.alpha"),
        "lang": cfg.get("align.lang"),
        "jobs": cfg.get("jobs"),
    }


def cmd_train_align(cfg: RunConfig) -> None:
    left, right = _datasets(cfg)
    gold = load_gold_links(cfg.path("align.gold"))
    model = train_on_gold(left, right, gold, cfg.get("align.setting"), **_align_params(cfg))
    with _open_out(cfg, "model.txt") as fh:
        model.save(fh)


def cmd_align(cfg: RunConfig) -> None:
    left, right = _datasets(cfg)
    params = _align_params(cfg)
    setting = cfg.get("align.setting")
    model_path = cfg.path("align.model", False)
    if model_path is not None:
        with open(model_path, encoding="utf-8") as fh:
            model = load_model(fh)
    elif "align.gold" in cfg.values:
        log.info("no align.model given; training one on align.gold")
        model = train_on_gold(left, right, load_gold_links(cfg.path("align.gold")), setting, **params)
    else:
        raise ConfigError("align needs align.model or align.gold")
    matching = align(left, right, model, setting, cfg.get("align.threshold"), **params)
    with _open_out(cfg, "alignment.tsv") as fh:
        write_alignment(matching, fh)
    log.info("linked %d pairs, total similarity %.6f", len(matching), matching.score)


def cmd_cv(cfg: RunConfig) -> None:
    left, right = _datasets(cfg)
    gold = load_gold_links(cfg.path("align.gold"))
    report = kfold_evaluate(
        left, right, gold, cfg.get("align.setting"), k=cfg.get("cv.k"), seed=cfg.get("seed"),
        threshold=cfg.get("align.threshold"), **_align_params(cfg),
    )
    with _open_out(cfg, "cv.json") as fh:
        report.write(fh)
    log.info("setting %d: P=%.3f R=%.3f F=%.3f", report.setting, report.precision, report.recall, report.f1)


COMMANDS = {
    "index": (cmd_index, "build and serialize the phrase index of the corpus"),
    "disambiguate": (cmd_disambiguate, "dump disambiguated contexts of every English sense"),
    "translate": (cmd_translate, "translate the wordnet; write lexicon and coverage report"),
    "evaluate": (cmd_evaluate, "score a translated lexicon against a gold lexicon"),
    "align": (cmd_align, "link left entities to right entities"),
    "train-align": (cmd_train_align, "train and save the similarity model"),
    "cv": (cmd_cv, "k-fold cross-validation of the alignment"),
    "stats": (cmd_stats, "synset, word and sense counts per language"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("run options")
    g.add_argument("--config", metavar="PATH", help="config file of dotted `key = value` lines")
    g.add_argument("--seed", type=int, metavar="N", help="random seed (seed)")
    g.add_argument("--jobs", type=int, metavar="N", help="worker threads; never changes output (jobs)")
    g.add_argument("--out", metavar="DIR", default=".", help="output directory (default: current)")
    p = common.add_argument_group("parameter overrides")
    p.add_argument("--n-min", dest="n_min", type=int, metavar="N", help="witness languages required (disambig.n_min)")
    p.add_argument("--m", type=int, metavar="N", help="contexts translated per sense (disambig.m)")
    p.add_argument("--t", type=int, metavar="N", help="candidates kept per context (translate.t)")
    p.add_argument("--threshold", type=float, metavar="X", help="minimum similarity to link (align.threshold)")
    p.add_argument("--alpha", type=float, metavar="X", help="smoothed Jaccard alpha (align.alpha)")
    p.add_argument("--setting", type=int, metavar="N", help="feature ladder setting 1-8 (align.setting)")
    p.add_argument("--max-n", dest="max_n", type=int, metavar="N", help="longest indexed n-gram (index.max_n)")
    p.add_argument("--k", type=int, metavar="N", help="cross-validation folds (cv.k)")

    parser = _Parser(prog="polywn", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "translate":
            sp.add_argument("--no-disambiguate", action="store_true",
                            help="skip context search and translate bare lemmas (translate.disambiguate = false)")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_run_config(args)
        COMMANDS[args.command][0](cfg)
    except ConfigError as exc:
        log.error("%s", exc)
        return 1
    except (OSError, ValueError) as exc:
        log.error("%s failed: %s", args.command, exc)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
