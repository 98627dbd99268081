"""Command-line experiment runner.

Subcommands reproduce the three benchmark experiments (similarity CDF,
coherence sweep, RMSE vs SNR) and expose dictionary build/inspect.  Settings
resolve as defaults -> --reduced preset -> config file -> command-line flags.
Exit codes: 0 success, 2 invalid configuration, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .experiments import (
    DEFAULT_ARRAY,
    REDUCED_ARRAY,
    CoherenceSweep,
    RmseSetup,
    SimilarityGrid,
    default_rmse_variants,
    run_coherence_sweep,
    run_dict_build,
    run_dict_info,
    run_rmse,
    run_similarity_cdf,
)
from .geometry import ArrayConfig
from .localization import TrialConfig
from .sampling import EmptyDictionaryError, SamplingConfig

EXPERIMENTS = ("similarity_cdf", "coherence_sweep", "rmse_vs_snr", "dict_build", "dict_info")

REDUCED_R_MIN = 1.0
REDUCED_R_MAX = 4.0
"Range window inside the reduced array's radiative near-field (0.6 m .. 4 m)."


class ConfigError(ValueError):
    """Invalid configuration file or experiment parameters."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One fully resolved experiment: the array, exactly one active block, and I/O."""

    array: ArrayConfig
    experiment: str
    similarity: SimilarityGrid | None = None
    coherence: CoherenceSweep | None = None
    rmse: RmseSetup | None = None
    dict_build: SamplingConfig | None = None
    dict_info_path: Path | None = None
    out: Path | None = None
    seed: int = 0
    threads: int = 1
    plot: bool = True

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        blocks = {
            "similarity_cdf": self.similarity,
            "coherence_sweep": self.coherence,
            "rmse_vs_snr": self.rmse,
            "dict_build": self.dict_build,
            "dict_info": self.dict_info_path,
        }
        if blocks[self.experiment] is None:
            raise ConfigError(f"experiment {self.experiment!r} has no parameter block")
        extra = [k for k, v in blocks.items() if v is not None and k != self.experiment]
        if extra:
            raise ConfigError(f"only one experiment block may be active, also got {extra}")
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")


def _load_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError as err:
        raise ConfigError(f"config file not found: {path}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config file is not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    return doc


def _resolve_array(doc: dict, reduced: bool) -> ArrayConfig:
    base = REDUCED_ARRAY if reduced else DEFAULT_ARRAY
    block = doc.get("array")
    if block is None:
        return base
    if not isinstance(block, dict):
        raise ConfigError("'array' must be an object")
    try:
        return ArrayConfig(
            m_h=int(block.get("m_h", base.m_h)),
            m_v=int(block.get("m_v", base.m_v)),
            spacing=float(block.get("spacing", base.spacing)),
            wavelength=float(block.get("wavelength", base.wavelength)),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(f"invalid array block: {err}") from err


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as err:
        raise ConfigError(f"expected a comma-separated float list, got {text!r}") from err


def _variant_from_dict(raw: dict, r_min: float, r_max: float) -> SamplingConfig:
    if not isinstance(raw, dict) or "mode" not in raw:
        raise ConfigError(f"variant must be an object with a 'mode', got {raw!r}")
    try:
        return SamplingConfig(
            mode=raw["mode"],
            alpha_thr=raw.get("alpha_thr"),
            n_points=raw.get("n_points"),
            r_min=float(raw.get("r_min", r_min)),
            r_max=float(raw.get("r_max", r_max)),
            angle_fill=float(raw.get("angle_fill", 1.0)),
            include_far_field=bool(raw.get("include_far_field", False)),
        )
    except ValueError as err:
        raise ConfigError(f"invalid variant {raw!r}: {err}") from err


def _merge(defaults: dict, *overlays: dict) -> dict:
    merged = dict(defaults)
    for overlay in overlays:
        merged.update({k: v for k, v in overlay.items() if v is not None})
    return merged


def build_experiment(ns: argparse.Namespace) -> ExperimentConfig:
    """Resolve CLI namespace + optional config file into one ExperimentConfig."""
    doc = _load_file(ns.config)
    if "experiment" in doc and doc["experiment"] != ns.experiment:
        raise ConfigError(
            f"config file selects experiment {doc['experiment']!r} but the "
            f"subcommand runs {ns.experiment!r}; exactly one block may be active")
    reduced = bool(ns.reduced)
    array = _resolve_array(doc, reduced)
    r_lo = REDUCED_R_MIN if reduced else 8.0
    r_hi = REDUCED_R_MAX if reduced else 64.0
    seed = ns.seed if ns.seed is not None else int(doc.get("seed", 0))
    out = ns.out or doc.get("out")

    kwargs: dict = {}
    if ns.experiment == "similarity_cdf":
        defaults = {
            "n_azimuth": 10 if reduced else 50, "n_elevation": 10 if reduced else 50,
            "n_range": 10 if reduced else 50, "angle_span": 0.9,
            "r_min": r_lo, "r_max": r_hi, "subsample": 0,
        }
        block = _merge(defaults, doc.get("similarity_cdf", {}),
                       {"subsample": ns.subsample})
        try:
            kwargs["similarity"] = SimilarityGrid(**block)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"invalid similarity_cdf block: {err}") from err
        out = out or "similarity_cdf.csv"
    elif ns.experiment == "coherence_sweep":
        defaults = {"r_min": r_lo, "r_max": r_hi, "method": "factorized"}
        block = _merge(defaults, doc.get("coherence_sweep", {}),
                       {"method": ns.method})
        if ns.alpha_thr is not None:
            block["alpha_thr"] = _parse_floats(ns.alpha_thr)
        if "alpha_thr" in block:
            block["alpha_thr"] = tuple(block["alpha_thr"])
        try:
            kwargs["coherence"] = CoherenceSweep(**block)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"invalid coherence_sweep block: {err}") from err
        out = out or "coherence_sweep.csv"
    elif ns.experiment == "rmse_vs_snr":
        raw = doc.get("rmse_vs_snr", {})
        if not isinstance(raw, dict):
            raise ConfigError("'rmse_vs_snr' must be an object")
        r_min = float(raw.get("r_min", r_lo))
        r_max = float(raw.get("r_max", r_hi))
        if "variants" in raw:
            variants = tuple(_variant_from_dict(v, r_min, r_max) for v in raw["variants"])
        else:
            variants = default_rmse_variants(r_min, r_max)
        snr = _parse_floats(ns.snr) if ns.snr is not None else \
            tuple(float(x) for x in raw.get("snr_db", (-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0)))
        n_trials = ns.trials if ns.trials is not None else \
            int(raw.get("n_trials", 200 if reduced else 1000))
        try:
            trial = TrialConfig(
                angle_span=float(raw.get("angle_span", 0.9)),
                r_min=r_min, r_max=r_max, snr_grid_db=snr,
                n_trials=n_trials, master_seed=seed,
            )
            kwargs["rmse"] = RmseSetup(variants=variants, trial=trial)
        except ValueError as err:
            raise ConfigError(f"invalid rmse_vs_snr block: {err}") from err
        out = out or "rmse_vs_snr.csv"
    elif ns.experiment == "dict_build":
        defaults = {"mode": "proposed", "alpha_thr": None, "n_points": None,
                    "r_min": r_lo, "r_max": r_hi, "angle_fill": 1.0,
                    "include_far_field": False}
        flags = {"mode": ns.mode, "alpha_thr": ns.alpha_thr_value,
                 "n_points": ns.n_points, "r_min": ns.r_min, "r_max": ns.r_max,
                 "include_far_field": True if ns.far_field else None}
        block = _merge(defaults, doc.get("dict_build", {}), flags)
        if block["mode"] == "proposed" and block["alpha_thr"] is None:
            block["alpha_thr"] = 1.0
        try:
            kwargs["dict_build"] = SamplingConfig(**block)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"invalid dict_build block: {err}") from err
        out = out or "dictionary.json"
    elif ns.experiment == "dict_info":
        path = ns.dictionary or doc.get("dict_info", {}).get("path")
        if not path:
            raise ConfigError("dict info needs a dictionary path")
        kwargs["dict_info_path"] = Path(path)

    return ExperimentConfig(
        array=array, experiment=ns.experiment,
        out=Path(out) if out else None, seed=seed,
        threads=ns.threads if ns.threads is not None else int(doc.get("threads", 1)),
        plot=not ns.no_plot, **kwargs,
    )


def execute(exp: ExperimentConfig) -> None:
    """Dispatch one resolved experiment."""
    if exp.experiment == "similarity_cdf":
        run_similarity_cdf(exp.array, exp.similarity, exp.out, exp.seed,
                           exp.threads, exp.plot)
        print(f"wrote {exp.out}")
    elif exp.experiment == "coherence_sweep":
        run_coherence_sweep(exp.array, exp.coherence, exp.out, exp.seed,
                            exp.threads, exp.plot)
        print(f"wrote {exp.out}")
    elif exp.experiment == "rmse_vs_snr":
        run_rmse(exp.array, exp.rmse, exp.out, exp.threads, exp.plot)
        print(f"wrote {exp.out}")
    elif exp.experiment == "dict_build":
        d = run_dict_build(exp.array, exp.dict_build, exp.out)
        print(f"wrote {exp.out} ({d.size} columns)")
    elif exp.experiment == "dict_info":
        info = run_dict_info(exp.dict_info_path, exp.out)
        if exp.out is None:
            print(json.dumps(info, indent=2, sort_keys=True))
        else:
            print(f"wrote {exp.out}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument("--out", metavar="PATH", help="output path")
    parser.add_argument("--seed", type=int, default=None, metavar="U64",
                        help="master seed (default 0)")
    parser.add_argument("--threads", type=int, default=None, metavar="N",
                        help="worker threads; results are identical for any value")
    parser.add_argument("--reduced", action="store_true",
                        help="CI-scale preset: 16x8 array, small grids, r in [1, 4] m")
    parser.add_argument("--no-plot", action="store_true",
                        help="skip rendering the .png next to the CSV")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polardict",
        description="Near-field polar-domain dictionary experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("similarity-cdf", help="CDF of model similarity to the exact response")
    _add_common(p)
    p.add_argument("--subsample", type=int, default=None, metavar="N",
                   help="evaluate a seeded N-point subsample of the grid")
    p.set_defaults(experiment="similarity_cdf")

    p = sub.add_parser("coherence-sweep", help="coherence and dictionary size vs threshold")
    _add_common(p)
    p.add_argument("--alpha-thr", default=None, metavar="LIST",
                   help="comma-separated threshold values")
    p.add_argument("--method", choices=("direct", "factorized"), default=None)
    p.set_defaults(experiment="coherence_sweep")

    p = sub.add_parser("rmse", help="localization RMSE vs SNR per dictionary variant")
    _add_common(p)
    p.add_argument("--trials", type=int, default=None, metavar="N")
    p.add_argument("--snr", default=None, metavar="LIST",
                   help="comma-separated SNR values in dB (write --snr=-10,0,10 "
                        "when the first value is negative)")
    p.set_defaults(experiment="rmse_vs_snr")

    dict_cmd = sub.add_parser("dict", help="dictionary build / inspect")
    dict_sub = dict_cmd.add_subparsers(dest="dict_command", required=True)

    p = dict_sub.add_parser("build", help="build and persist a dictionary")
    _add_common(p)
    p.add_argument("--mode", choices=("proposed", "uniform"), default=None)
    p.add_argument("--alpha-thr", dest="alpha_thr_value", type=float, default=None)
    p.add_argument("--n-points", type=int, default=None)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--far-field", action="store_true",
                   help="append one far-field column per direction")
    p.set_defaults(experiment="dict_build")

    p = dict_sub.add_parser("info", help="summarize a persisted dictionary")
    _add_common(p)
    p.add_argument("dictionary", nargs="?", help="path to a dictionary JSON file")
    p.set_defaults(experiment="dict_info")

    return parser


def main(argv=None) -> int:
    ns = make_parser().parse_args(argv)
    try:
        exp = build_experiment(ns)
    except ValueError as err:  # ConfigError and nested validation failures
        print(f"polardict: configuration error: {err}", file=sys.stderr)
        return 2
    try:
        execute(exp)
    except (ConfigError, EmptyDictionaryError) as err:
        print(f"polardict: configuration error: {err}", file=sys.stderr)
        return 2
    except Exception as err:
        print(f"polardict: error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
