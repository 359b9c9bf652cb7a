"""Batch command line interface: JSON config in, deterministic files out.

Every run writes its outputs plus a manifest (file names, SHA-256 digests,
sizes, config digest, resolved seed) so results can be diffed byte for byte.
The same config and seed always produce identical bytes.

Exit codes: 0 success, 2 configuration problems (all of them reported at once
on a single stderr line), 3 numerical guard violations.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from .codes import CatCodeSpec, GkpCodeSpec, encode, logical_error_rate
from .errors import ConfigError, GridMismatchError, SupportGuardError
from .gates import Circuit, apply_circuit, parse_circuit
from .grid import FrequencyGrid, balanced_spacing, make_grid
from .phasespace import (
    hom_coincidence,
    hom_witness,
    joint_spectral_intensity,
    joint_temporal_intensity,
    mixed_intensity,
    wigner,
)
from .schmidt import is_entangled, schmidt_decompose, schmidt_number
from .spdc import GaussianJsaSpec, gaussian_jsa
from .states import (
    JointSpectralAmplitude,
    SpectralAmplitude,
    gaussian_state,
    jsa_from_json_dict,
    jsa_to_json_dict,
    moments,
    product_jsa,
    state_from_json_dict,
    state_to_json_dict,
)

ANALYSES = ("wigner", "schmidt", "hom", "marginals", "codes", "moments")
SINGLE_PHOTON_ANALYSES = frozenset(("wigner", "moments", "codes"))
TWO_PHOTON_ANALYSES = frozenset(("schmidt", "hom", "marginals"))
SOURCE_KINDS = ("gaussian", "cat", "gkp", "gaussian_jsa", "product_gaussian", "state_file")
SINGLE_PHOTON_SOURCES = frozenset(("gaussian", "cat", "gkp"))
MAX_SEED = 2**64 - 1

# required and optional parameters per source kind (name -> default for optionals)
_SOURCE_FIELDS = {
    "gaussian": ({"width"}, {"center": 0.0, "chirp": 0.0}),
    "cat": ({"separation", "peak_width"}, {"bit": 0}),
    "gkp": ({"spacing", "peak_width", "envelope_width"}, {"bit": 0}),
    "gaussian_jsa": (
        {"delta_plus", "delta_minus"},
        {"center_s": 0.0, "center_i": 0.0},
    ),
    "product_gaussian": ({"signal", "idler"}, {}),
    "state_file": ({"path"}, {}),
}


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


class _Problems:
    def __init__(self):
        self.items: list[str] = []

    def add(self, message: str):
        self.items.append(message)

    def raise_if_any(self):
        if self.items:
            raise ConfigError(self.items)


def _check_unknown_keys(data: dict, allowed, where: str, problems: _Problems):
    for key in sorted(set(data) - set(allowed)):
        problems.add(f"unknown key {key!r} in {where}")


def _validate_grid_section(data, problems: _Problems) -> dict:
    out = {"n_points": 256, "spacing": None, "center": 0.0}
    if data is None:
        return out
    if not isinstance(data, dict):
        problems.add("grid must be an object")
        return out
    _check_unknown_keys(data, ("n_points", "spacing", "center"), "grid", problems)
    n = data.get("n_points", 256)
    if not isinstance(n, int) or isinstance(n, bool) or n < 8 or n & (n - 1):
        problems.add("grid.n_points must be a power-of-two integer >= 8")
    else:
        out["n_points"] = n
    if "spacing" in data:
        if not _is_number(data["spacing"]) or data["spacing"] <= 0:
            problems.add("grid.spacing must be a positive finite number")
        else:
            out["spacing"] = float(data["spacing"])
    if "center" in data:
        if not _is_number(data["center"]):
            problems.add("grid.center must be a finite number")
        else:
            out["center"] = float(data["center"])
    return out


def _validate_source_section(data, config_dir: Path, problems: _Problems) -> dict | None:
    if data is None:
        problems.add("source section is required")
        return None
    if not isinstance(data, dict):
        problems.add("source must be an object")
        return None
    kind = data.get("kind")
    if kind not in SOURCE_KINDS:
        problems.add(f"source.kind must be one of {', '.join(SOURCE_KINDS)}; got {kind!r}")
        return None
    required, optional = _SOURCE_FIELDS[kind]
    allowed = {"kind"} | required | set(optional)
    _check_unknown_keys(data, allowed, "source", problems)
    for name in sorted(required - set(data)):
        problems.add(f"source.{name} is required for kind {kind!r}")

    out = {"kind": kind}
    for name in sorted(required | set(optional)):
        if name not in data:
            if name in optional:
                out[name] = optional[name]
            continue
        value = data[name]
        if name == "bit":
            if value not in (0, 1) or isinstance(value, bool):
                problems.add("source.bit must be 0 or 1")
                continue
        elif name == "path":
            if not isinstance(value, str) or not value:
                problems.add("source.path must be a non-empty string")
                continue
            value = str((config_dir / value).resolve())
            if not Path(value).is_file():
                problems.add(f"source.path does not exist: {data[name]!r}")
                continue
        elif name in ("signal", "idler"):
            if not isinstance(value, dict):
                problems.add(f"source.{name} must be an object")
                continue
            _check_unknown_keys(value, ("center", "width", "chirp"), f"source.{name}", problems)
            if "width" not in value:
                problems.add(f"source.{name}.width is required")
            arm = {}
            for field, default in (("center", 0.0), ("width", None), ("chirp", 0.0)):
                raw = value.get(field, default)
                if raw is None:
                    continue
                if not _is_number(raw):
                    problems.add(f"source.{name}.{field} must be a finite number")
                else:
                    arm[field] = float(raw)
            value = arm
        elif not _is_number(value):
            problems.add(f"source.{name} must be a finite number")
            continue
        out[name] = value
    return out


def _validate_hom_section(data, problems: _Problems) -> dict | None:
    if data is None:
        return None
    if not isinstance(data, dict):
        problems.add("hom must be an object")
        return None
    _check_unknown_keys(data, ("delay_span", "delay_count"), "hom", problems)
    out = {"delay_span": None, "delay_count": 201}
    if "delay_span" in data:
        if not _is_number(data["delay_span"]) or data["delay_span"] <= 0:
            problems.add("hom.delay_span must be a positive finite number")
        else:
            out["delay_span"] = float(data["delay_span"])
    if "delay_count" in data:
        count = data["delay_count"]
        if not isinstance(count, int) or isinstance(count, bool) or count < 2:
            problems.add("hom.delay_count must be an integer >= 2")
        else:
            out["delay_count"] = count
    return out


def _validate_codes_section(data, problems: _Problems) -> dict:
    out = {"sigma_mu": 0.0, "sigma_s": 0.0, "trials": 1000}
    if data is None:
        return out
    if not isinstance(data, dict):
        problems.add("codes must be an object")
        return out
    _check_unknown_keys(data, ("sigma_mu", "sigma_s", "trials"), "codes", problems)
    for name in ("sigma_mu", "sigma_s"):
        if name in data:
            if not _is_number(data[name]) or data[name] < 0:
                problems.add(f"codes.{name} must be a non-negative finite number")
            else:
                out[name] = float(data[name])
    if "trials" in data:
        trials = data["trials"]
        if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
            problems.add("codes.trials must be a positive integer")
        else:
            out["trials"] = trials
    return out


def _validate_analyses(data, problems: _Problems) -> list:
    if data is None:
        problems.add("analyses section is required")
        return []
    if not isinstance(data, list) or not data:
        problems.add("analyses must be a non-empty list")
        return []
    out = []
    for i, name in enumerate(data):
        if name not in ANALYSES:
            problems.add(
                f"analyses[{i}] must be one of {', '.join(ANALYSES)}; got {name!r}"
            )
        elif name in out:
            problems.add(f"analyses[{i}] duplicates {name!r}")
        else:
            out.append(name)
    return out


def _load_circuit(path_value, config_dir: Path, problems: _Problems) -> Circuit | None:
    if path_value is None:
        return None
    if not isinstance(path_value, str) or not path_value:
        problems.add("circuit must be a non-empty string path")
        return None
    path = config_dir / path_value
    if not path.is_file():
        problems.add(f"circuit file does not exist: {path_value!r}")
        return None
    try:
        entries = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        problems.add(f"circuit file is not valid JSON: {exc}")
        return None
    try:
        return parse_circuit(entries)
    except ValueError as exc:
        problems.add(f"circuit: {exc}")
        return None


TOP_LEVEL_KEYS = (
    "grid",
    "source",
    "analyses",
    "circuit",
    "out_dir",
    "seed",
    "export_state",
    "hom",
    "codes",
)


def load_config(path: Path) -> dict:
    """Parse and strictly validate a config file, collecting every problem."""
    problems = _Problems()
    try:
        raw_bytes = path.read_bytes()
    except OSError as exc:
        raise ConfigError([f"cannot read config: {exc}"]) from None
    try:
        data = json.loads(raw_bytes)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config is not valid JSON: {exc}"]) from None
    if not isinstance(data, dict):
        raise ConfigError(["config must be a JSON object"])

    config_dir = path.parent
    _check_unknown_keys(data, TOP_LEVEL_KEYS, "config", problems)

    out = {
        "config_sha256": hashlib.sha256(raw_bytes).hexdigest(),
        "grid": _validate_grid_section(data.get("grid"), problems),
        "grid_explicit": "grid" in data,
        "source": _validate_source_section(data.get("source"), config_dir, problems),
        "analyses": _validate_analyses(data.get("analyses"), problems),
        "circuit": _load_circuit(data.get("circuit"), config_dir, problems),
        "hom": _validate_hom_section(data.get("hom"), problems),
        "codes": _validate_codes_section(data.get("codes"), problems),
        "out_dir": None,
        "seed": 0,
        "export_state": False,
    }

    if "out_dir" in data:
        if not isinstance(data["out_dir"], str) or not data["out_dir"]:
            problems.add("out_dir must be a non-empty string")
        else:
            out["out_dir"] = str(config_dir / data["out_dir"])
    if "seed" in data:
        seed = data["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed <= MAX_SEED:
            problems.add("seed must be an integer in [0, 2^64)")
        else:
            out["seed"] = seed
    if "export_state" in data:
        if not isinstance(data["export_state"], bool):
            problems.add("export_state must be a boolean")
        else:
            out["export_state"] = data["export_state"]

    problems.raise_if_any()
    return out


def _build_source(config: dict, grid: FrequencyGrid):
    source = config["source"]
    kind = source["kind"]
    if kind == "gaussian":
        return gaussian_state(
            grid, center=source["center"], width=source["width"], chirp=source["chirp"]
        )
    if kind == "cat":
        spec = CatCodeSpec(source["separation"], source["peak_width"])
        return encode(grid, spec, source["bit"])
    if kind == "gkp":
        spec = GkpCodeSpec(source["spacing"], source["peak_width"], source["envelope_width"])
        return encode(grid, spec, source["bit"])
    if kind == "gaussian_jsa":
        spec = GaussianJsaSpec(
            source["delta_plus"],
            source["delta_minus"],
            center_s=source["center_s"],
            center_i=source["center_i"],
        )
        return gaussian_jsa(grid, grid, spec)
    if kind == "product_gaussian":
        signal = gaussian_state(grid, **source["signal"])
        idler = gaussian_state(grid, **source["idler"])
        return product_jsa(signal, idler)
    # state_file
    data = json.loads(Path(source["path"]).read_text())
    if not isinstance(data, dict):
        raise ConfigError(["state file must hold a JSON object"])
    try:
        if "layout" in data:
            return jsa_from_json_dict(data)
        return state_from_json_dict(data)
    except ValueError as exc:
        raise ConfigError([f"state file: {exc}"]) from None


def _code_spec_from_source(source: dict):
    if source["kind"] == "cat":
        return CatCodeSpec(source["separation"], source["peak_width"])
    return GkpCodeSpec(source["spacing"], source["peak_width"], source["envelope_width"])


def _csv_bytes(header: str, rows) -> bytes:
    lines = [header]
    for row in rows:
        lines.append(",".join("%.17g" % x for x in row))
    return ("\n".join(lines) + "\n").encode()


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()


def _grid_csv_rows(row_axis, col_axis, values):
    for i, r in enumerate(row_axis):
        for j, c in enumerate(col_axis):
            yield (r, c, values[i, j])


def _run_analyses(config: dict, state, seed: int) -> dict[str, bytes]:
    files: dict[str, bytes] = {}
    for analysis in config["effective_analyses"]:
        if analysis == "wigner":
            wm = wigner(state)
            files["wigner.csv"] = _csv_bytes(
                "mu,tau,W", _grid_csv_rows(wm.mu_axis, wm.tau_axis, wm.values)
            )
        elif analysis == "moments":
            m = moments(state)
            files["moments.json"] = _json_bytes(
                {
                    "mean_omega": m.mean_omega,
                    "delta_omega": m.delta_omega,
                    "mean_time": m.mean_time,
                    "delta_time": m.delta_time,
                }
            )
        elif analysis == "codes":
            spec = _code_spec_from_source(config["source"])
            codes_cfg = config["codes"]
            rate = logical_error_rate(
                state.grid,
                spec,
                sigma_mu=codes_cfg["sigma_mu"],
                sigma_s=codes_cfg["sigma_s"],
                trials=codes_cfg["trials"],
                seed=seed,
            )
            files["codes.json"] = _json_bytes(
                {"error_rate": rate, "trials": codes_cfg["trials"], "seed": seed}
            )
        elif analysis == "schmidt":
            decomp = schmidt_decompose(state)
            files["schmidt.json"] = _json_bytes(
                {
                    "coefficients": [float(x) for x in decomp.coefficients],
                    "K": schmidt_number(decomp),
                    "entangled": is_entangled(decomp),
                }
            )
        elif analysis == "hom":
            hom_cfg = config["hom"]
            if hom_cfg is not None and hom_cfg["delay_span"] is not None:
                delays = np.linspace(
                    -hom_cfg["delay_span"], hom_cfg["delay_span"], hom_cfg["delay_count"]
                )
            else:
                delays = None
            delays, prob = hom_coincidence(state, delays)
            witness, peak, at_delay = hom_witness(delays, prob)
            files["hom.csv"] = _csv_bytes(
                "delay,coincidence_probability", zip(delays, prob)
            )
            files["hom.json"] = _json_bytes(
                {
                    "witness": witness,
                    "max_coincidence": peak,
                    "delay_at_max": at_delay,
                }
            )
        elif analysis == "marginals":
            grid_s, grid_i = state.grid_s, state.grid_i
            files["jsi.csv"] = _csv_bytes(
                "omega_s,omega_i,intensity",
                _grid_csv_rows(
                    grid_s.omega_axis, grid_i.omega_axis, joint_spectral_intensity(state)
                ),
            )
            files["jti.csv"] = _csv_bytes(
                "t_s,t_i,intensity",
                _grid_csv_rows(
                    grid_s.time_axis, grid_i.time_axis, joint_temporal_intensity(state)
                ),
            )
            files["jtsi_ts_wi.csv"] = _csv_bytes(
                "t_s,omega_i,intensity",
                _grid_csv_rows(
                    grid_s.time_axis, grid_i.omega_axis, mixed_intensity(state, "signal")
                ),
            )
            files["jtsi_ti_ws.csv"] = _csv_bytes(
                "t_i,omega_s,intensity",
                _grid_csv_rows(
                    grid_i.time_axis,
                    grid_s.omega_axis,
                    mixed_intensity(state, "idler").T,
                ),
            )
    if config["export_state"]:
        if isinstance(state, SpectralAmplitude):
            payload = state_to_json_dict(state)
        else:
            payload = jsa_to_json_dict(state)
        files["state.json"] = _json_bytes(payload)
    return files


def _semantic_checks(config: dict):
    problems = _Problems()
    source = config["source"]
    single = source["kind"] in SINGLE_PHOTON_SOURCES
    if source["kind"] == "state_file":
        single = config["state_is_single"]
        if config["grid_explicit"] or config["grid_overridden"]:
            problems.add("state_file sources carry their own grid; remove grid settings")
    for analysis in config["effective_analyses"]:
        if single and analysis in TWO_PHOTON_ANALYSES:
            problems.add(
                f"analysis {analysis!r} needs a two-photon source, got {source['kind']!r}"
            )
        if not single and analysis in SINGLE_PHOTON_ANALYSES:
            problems.add(
                f"analysis {analysis!r} needs a single-photon source, got {source['kind']!r}"
            )
    if "codes" in config["effective_analyses"] and source["kind"] not in ("cat", "gkp"):
        problems.add("analysis 'codes' requires a cat or gkp source")
    circuit = config["circuit"]
    if circuit is not None:
        needed = 1 if single else 2
        if circuit.arity > needed:
            problems.add(
                f"circuit has arity {circuit.arity} but the source has {needed} photon(s)"
            )
    problems.raise_if_any()


def _resolve_grid(config: dict, args) -> FrequencyGrid:
    grid_cfg = dict(config["grid"])
    if args.n_points is not None:
        grid_cfg["n_points"] = args.n_points
    if args.spacing is not None:
        grid_cfg["spacing"] = args.spacing
    if args.center is not None:
        grid_cfg["center"] = args.center
    spacing = grid_cfg["spacing"]
    if spacing is None:
        spacing = balanced_spacing(grid_cfg["n_points"])
    try:
        return make_grid(grid_cfg["n_points"], spacing, grid_cfg["center"])
    except ValueError as exc:
        raise ConfigError([str(exc)]) from None


def _write_outputs(out_dir: Path, files: dict[str, bytes], config_sha: str, seed: int):
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for name in sorted(files):
        payload = files[name]
        (out_dir / name).write_bytes(payload)
        entries.append(
            {
                "name": name,
                "sha256": hashlib.sha256(payload).hexdigest(),
                "size": len(payload),
            }
        )
    manifest = {"config_sha256": config_sha, "files": entries, "seed": seed}
    (out_dir / "manifest.json").write_bytes(_json_bytes(manifest))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tfphoton",
        description="Grid-based simulator for time-frequency photonic states",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "run": "run every analysis listed in the config",
        "schmidt": "mode decomposition of a two-photon source",
        "wigner": "phase-space map of a single-photon source",
        "hom": "two-photon interference dip scan",
        "codes": "Monte Carlo logical error rate for an encoded source",
        "marginals": "joint intensity tables of a two-photon source",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", type=Path, help="path to the JSON config")
        p.add_argument("--out", type=Path, default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument(
            "--n-points", type=int, default=None, help="override the grid size"
        )
        p.add_argument(
            "--spacing", type=float, default=None, help="override the grid spacing"
        )
        p.add_argument(
            "--center", type=float, default=None, help="override the grid center"
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.seed is not None:
            if not 0 <= args.seed <= MAX_SEED:
                raise ConfigError(["--seed must be in [0, 2^64)"])
            config["seed"] = args.seed
        config["effective_analyses"] = (
            config["analyses"] if args.command == "run" else [args.command]
        )
        config["grid_overridden"] = any(
            x is not None for x in (args.n_points, args.spacing, args.center)
        )

        if config["source"]["kind"] == "state_file":
            state = _build_source(config, None)
            config["state_is_single"] = isinstance(state, SpectralAmplitude)
            _semantic_checks(config)
        else:
            config["state_is_single"] = None
            _semantic_checks(config)
            grid = _resolve_grid(config, args)
            state = _build_source(config, grid)

        if config["circuit"] is not None:
            state = apply_circuit(state, config["circuit"])

        out_dir = args.out if args.out is not None else config["out_dir"]
        if out_dir is None:
            raise ConfigError(["no output directory: pass --out or set out_dir"])

        files = _run_analyses(config, state, config["seed"])
        _write_outputs(Path(out_dir), files, config["config_sha256"], config["seed"])
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SupportGuardError as exc:
        print(f"numerical guard violation: {exc}", file=sys.stderr)
        return 3
    except GridMismatchError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
