"""
Příkazová řádka:

  featurize --train P [--config F] --out DIR [--dim M] [--norm MODE]
  query     --space DIR --metric {ed|cs|tsss} (--text S | --file P)
  sweep     --train P [--test P] [--config F] [--norm LIST] [--dims LIST]
            [--metrics LIST] --out CSV [--jobs N] [--details PATH] [--beta B]
  theory    nn-distance --m M --n N
  theory    required-n --d D --m M

Návratové kódy: 0 = OK, 1 = chybné použití / konfigurace, 2 = chyba dat.
Na stdout jde jen strojový výstup (JSON), průběh a chyby na stderr.
"""
import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from docsim import __version__
from docsim.cbr import retrieve_nearest
from docsim.config import RunConfig
from docsim.corpus import load_corpus, split_corpus
from docsim.errors import ConfigError, DocsimError
from docsim.evaluation import provenance_path
from docsim.features import NORM_MODES, vectorize
from docsim.metrics import MetricKind
from docsim.pipeline import fit_training_features, run_sweeps, tokenize_corpus
from docsim.preprocess import preprocess_document
from docsim.storage import load_space, save_space
from docsim.theory import median_nn_distance, required_points

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _progress(msg: str, frac: float) -> None:
    _say(f"⏳ [{frac:4.0%}] {msg}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="docsim", description="Podobnost dokumentů (ED / CS / TS-SS) a CBR klasifikace.")
    ap.add_argument("--version", action="version", version=f"docsim {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="Podrobné logování na stderr")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    f = sub.add_parser("featurize", help="Sestaví a uloží prostor příznaků + trénovací vektory")
    f.add_argument("--train", help="Trénovací korpus (.jsonl nebo adresář s podadresáři = labely)")
    f.add_argument("--config", help="Konfigurační soubor (TOML)")
    f.add_argument("--out", required=True, help="Výstupní adresář")
    f.add_argument("--dim", type=int, default=None, help="Počet příznaků M (default celý slovník)")
    f.add_argument("--norm", default=None, help=f"Normalizace ({'|'.join(NORM_MODES)})")
    f.add_argument("--format", dest="corpus_format", default=None, help="auto | jsonl | labeled-dirs")

    q = sub.add_parser("query", help="Najde nejbližší případ k textu")
    q.add_argument("--space", required=True, help="Adresář z příkazu featurize")
    q.add_argument("--metric", required=True, help="ed | cs | tsss")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", help="Text dotazu")
    src.add_argument("--file", help="Soubor s textem dotazu (UTF-8)")

    s = sub.add_parser("sweep", help="Přesnost klasifikace přes mřížku dimenzí, metrik a normalizací")
    s.add_argument("--train", help="Trénovací korpus")
    s.add_argument("--test", help="Testovací korpus (bez něj se train rozdělí podle seed/test_fraction)")
    s.add_argument("--config", help="Konfigurační soubor (TOML)")
    s.add_argument("--norm", default=None, help="Seznam normalizací, např. none,l2")
    s.add_argument("--dims", default=None, help="Seznam dimenzí, např. 10,50,100")
    s.add_argument("--metrics", default=None, help="Seznam metrik, např. ed,cs,tsss")
    s.add_argument("--out", default=None, help="Výstupní CSV (provenance vedle jako .json)")
    s.add_argument("--jobs", type=int, default=None, help="Počet vláken pro dotazy (default 1)")
    s.add_argument("--details", default=None, help="CSV s precision/recall/F po labelech")
    s.add_argument("--beta", type=float, default=None, help="β pro F-skóre (default 1)")
    s.add_argument("--seed", type=int, default=None, help="Seed pro rozdělení train/test")
    s.add_argument("--test-fraction", dest="test_fraction", type=float, default=None)
    s.add_argument("--format", dest="corpus_format", default=None, help="auto | jsonl | labeled-dirs")

    t = sub.add_parser("theory", help="Prokletí dimenzionality")
    tsub = t.add_subparsers(dest="formula", parser_class=_Parser)
    tsub.required = True
    nn = tsub.add_parser("nn-distance", help="Medián vzdálenosti k nejbližšímu z N bodů v M dimenzích")
    nn.add_argument("--m", type=int, required=True)
    nn.add_argument("--n", type=int, required=True)
    rn = tsub.add_parser("required-n", help="Počet bodů pro medián vzdálenosti d v M dimenzích")
    rn.add_argument("--d", type=float, required=True)
    rn.add_argument("--m", type=int, required=True)
    return ap


# ---------------------------
# Konfigurace z příznaků
# ---------------------------

def resolve_config(args: argparse.Namespace, keys: List[str]) -> RunConfig:
    base = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    overrides: Dict[str, Any] = {k: getattr(args, k, None) for k in keys}
    return base.merged(overrides).validate()


# ---------------------------
# Příkazy
# ---------------------------

def cmd_featurize(args: argparse.Namespace) -> int:
    cfg = resolve_config(args, ["train", "norm", "corpus_format"])
    if not cfg.train:
        raise UsageError("featurize: chybí --train (nebo train v konfiguraci)")
    if len(cfg.norm) != 1:
        raise UsageError(f"featurize: očekávána jedna normalizace, je {','.join(cfg.norm)}")
    norm_mode = cfg.norm[0]

    train = load_corpus(cfg.train, cfg.corpus_format)
    prep = cfg.preprocess_config()
    _say(f"🚀 Featurize: {len(train)} dokumentů z {cfg.train}")

    tokens = tokenize_corpus(train, prep)
    fitted = fit_training_features(tokens, cfg.min_df, cfg.max_df)
    dim = args.dim if args.dim is not None else len(fitted.vocabulary)
    if dim < 1:
        raise ConfigError(f"--dim musí být >= 1, je {dim}")
    space = fitted.space(dim)

    vectors = [(d.id, vectorize(tok, space, norm_mode)) for d, tok in zip(train, tokens)]
    save_space(args.out, space, norm_mode, prep, vectors, [(d.id, d.label) for d in train])
    _say(f"✅ Hotovo. Prostor M={space.dim} (slovník {len(fitted.vocabulary)}) uložen do {args.out}")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    metric = MetricKind.parse(args.metric)
    text = args.text if args.text is not None else Path(args.file).read_text(encoding="utf-8")

    stored = load_space(args.space)
    q = vectorize(preprocess_document(text, stored.preprocess), stored.space, stored.norm_mode)
    if q.is_zero:
        log.warning("Dotaz po předzpracování nemá žádný příznak z prostoru (nulový vektor).")
    result = retrieve_nearest(q, stored.case_base(), metric)
    print(json.dumps(result.to_dict(), ensure_ascii=False))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = resolve_config(
        args,
        ["train", "test", "norm", "dims", "metrics", "out", "jobs", "beta", "seed", "test_fraction", "corpus_format"],
    )
    if not cfg.train:
        raise UsageError("sweep: chybí --train (nebo train v konfiguraci)")
    if not cfg.out:
        raise UsageError("sweep: chybí --out (nebo out v konfiguraci)")

    train = load_corpus(cfg.train, cfg.corpus_format)
    split: Optional[Dict[str, Any]] = None
    if cfg.test:
        test = load_corpus(cfg.test, cfg.corpus_format)
    else:
        train, test = split_corpus(train, cfg.test_fraction, cfg.seed)
        split = {"seed": cfg.seed, "test_fraction": cfg.test_fraction}
    _say(f"🚀 Sweep: train {len(train)}, test {len(test)}, normalizace {','.join(cfg.norm)}")

    report = run_sweeps(
        train, test, cfg.preprocess_config(), cfg.dims, cfg.norm, cfg.metric_kinds(),
        min_df=cfg.min_df, max_df=cfg.max_df, jobs=cfg.jobs, beta=cfg.beta, progress=_progress,
    )
    report.provenance["config_echo"] = cfg.to_toml()
    report.provenance["stopword_source"] = cfg.stopword_source()
    if split:
        report.provenance["split"] = split

    report.write_csv(cfg.out)
    report.write_provenance(provenance_path(cfg.out))
    if args.details:
        report.write_details(args.details)

    flagged = [r["normalization"] for r in report.provenance["runs"] if r["flagged"]]
    if flagged:
        _say(f"⚠️ Prázdný slovník, řádky označeny: {', '.join(flagged)}")
    _say(f"✅ Hotovo. Report: {cfg.out}")
    return EXIT_OK


def cmd_theory(args: argparse.Namespace) -> int:
    if args.formula == "nn-distance":
        out = {"value": median_nn_distance(args.m, args.n)}
    else:
        raw = required_points(args.d, args.m)
        out = {"value": raw, "ceil": math.ceil(raw)}
    print(json.dumps(out))
    return EXIT_OK


COMMANDS = {
    "featurize": cmd_featurize,
    "query": cmd_query,
    "sweep": cmd_sweep,
    "theory": cmd_theory,
}


def execute(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _say(f"❌ {e}")
        return EXIT_USAGE
    except SystemExit as e:
        # --help / --version
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as e:
        _say(f"❌ {e}")
        return EXIT_USAGE
    except (DocsimError, OSError, ValueError, ArithmeticError) as e:
        _say(f"❌ {e}")
        return EXIT_DATA


def main() -> None:
    sys.exit(execute())
