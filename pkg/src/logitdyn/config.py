"""Simulation config files and run manifests.

A config is flat ``key = value`` text::

    # two-armed bandit, exact advantages
    arms = 2
    means = 1.0, 0.0
    mode = exact-advantage
    steps = 2000
    eta = 0.1
    seed = 2

A manifest is JSON holding the fully resolved config plus provenance; it can be
fed back to ``logitdyn simulate --manifest`` to reproduce a run exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from . import __version__
from .bandit import BASELINES, EXACT, MODES, BanditEnv, SimConfig
from .exceptions import InvalidParameterError
from .oracle import RNG_ALGORITHM

KEYS = ("arms", "means", "noise_std", "mode", "steps", "eta", "seed", "baseline",
        "snapshot_logits", "initial_logits")
REQUIRED = ("means", "steps", "eta")


class ConfigError(InvalidParameterError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def parse_config_text(text: str) -> dict[str, str]:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(key or f"line {lineno}", f"expected 'key = value' on line {lineno}")
        if key not in KEYS:
            raise ConfigError(key, f"unknown key on line {lineno}")
        if key in raw:
            raise ConfigError(key, f"duplicate key on line {lineno}")
        raw[key] = value.strip()
    return raw


def _float(key, s):
    try:
        x = float(s)
    except ValueError:
        raise ConfigError(key, f"not a number: {s!r}") from None
    if not math.isfinite(x):
        raise ConfigError(key, f"must be finite, got {s!r}")
    return x


def _int(key, s):
    try:
        return int(s)
    except ValueError:
        raise ConfigError(key, f"not an integer: {s!r}") from None


def _floats(key, s):
    return tuple(_float(key, x) for x in s.split(",") if x.strip())


def _bool(key, s):
    v = s.lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise ConfigError(key, f"not a boolean: {s!r}")


def build(raw: dict[str, str]) -> tuple[BanditEnv, SimConfig]:
    """Validate raw config strings into a bandit and a simulation config."""
    for key in REQUIRED:
        if key not in raw:
            raise ConfigError(key, "missing required key")
    means = _floats("means", raw["means"])
    if len(means) < 2:
        raise ConfigError("means", "need at least 2 arm means")
    if "arms" in raw and _int("arms", raw["arms"]) != len(means):
        raise ConfigError("arms", f"arms = {raw['arms']} but {len(means)} means given")
    noise = _float("noise_std", raw.get("noise_std", "0"))
    if noise < 0:
        raise ConfigError("noise_std", "must be >= 0")
    mode = raw.get("mode", EXACT)
    if mode not in MODES:
        raise ConfigError("mode", f"must be one of {', '.join(MODES)}")
    steps = _int("steps", raw["steps"])
    if steps < 1:
        raise ConfigError("steps", f"must be >= 1, got {steps}")
    eta = _float("eta", raw["eta"])
    if eta <= 0:
        raise ConfigError("eta", f"must be > 0, got {eta}")
    baseline = raw.get("baseline", "none")
    if baseline not in BASELINES:
        raise ConfigError("baseline", f"must be one of {', '.join(BASELINES)}")
    init = raw.get("initial_logits", "zeros")
    initial_logits = None
    if init != "zeros":
        initial_logits = _floats("initial_logits", init)
        if len(initial_logits) != len(means):
            raise ConfigError("initial_logits", f"{len(initial_logits)} logits for {len(means)} arms")
    env = BanditEnv(arm_means=means, reward_noise_std=noise, mode=mode)
    cfg = SimConfig(
        steps=steps,
        learning_rate=eta,
        seed=_int("seed", raw.get("seed", "0")),
        initial_logits=initial_logits,
        baseline=baseline,
        snapshot_logits=_bool("snapshot_logits", raw.get("snapshot_logits", "false")),
    )
    return env, cfg


def load_config(path) -> tuple[BanditEnv, SimConfig]:
    return build(parse_config_text(Path(path).read_text()))


def resolved_config(env: BanditEnv, cfg: SimConfig) -> dict:
    return {
        "arms": env.n_arms,
        "means": list(env.arm_means),
        "noise_std": env.reward_noise_std,
        "mode": env.mode,
        "steps": cfg.steps,
        "eta": cfg.learning_rate,
        "seed": cfg.seed,
        "baseline": cfg.baseline,
        "snapshot_logits": cfg.snapshot_logits,
        "initial_logits": "zeros" if cfg.initial_logits is None else list(cfg.initial_logits),
    }


def config_from_resolved(d: dict) -> tuple[BanditEnv, SimConfig]:
    def fmt(v):
        if isinstance(v, list):
            return ", ".join(repr(float(x)) for x in v)
        if isinstance(v, float):
            return repr(v)
        return str(v)

    unknown = set(d) - set(KEYS)
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key in manifest config")
    return build({k: fmt(v) for k, v in d.items()})


def make_manifest(command: str, config: dict, outputs: list[str], seed: int | None = None) -> dict:
    return {
        "command": command,
        "version": __version__,
        "seed": seed,
        "rng": RNG_ALGORITHM,
        "config": config,
        "outputs": outputs,
    }


def write_manifest(path, manifest: dict) -> None:
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def load_manifest(path) -> dict:
    try:
        manifest = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError("manifest", f"not valid JSON: {exc}") from None
    if not isinstance(manifest, dict) or "config" not in manifest:
        raise ConfigError("manifest", "no 'config' section")
    return manifest


def manifest_path_for(output) -> Path:
    return Path(output).with_suffix(".manifest.json")
