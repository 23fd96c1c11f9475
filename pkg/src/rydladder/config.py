"""Run configuration: strict INI-style files, units, hashing, round trips.

Grammar: `[section]` headers with `key = value` lines; `#` or `;` comments.
All frequencies are entered in MHz and interpreted as nu with omega =
2*pi*nu (the internal representation is rad/s); lengths are micrometers; the
van der Waals coefficient is in 2pi*MHz*um^6.  Unknown sections or keys are
rejected with the offending line number.

The resolved configuration (every key, defaults filled in) can be serialized
back to INI text; re-running from that text reproduces the original outputs
byte for byte.
"""
from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import dataclass

from .cloud import CloudGeometry, sphere_radius_from_density
from .ensemble import SWEEPABLE, SweepSpec
from .errors import ConfigError
from .meanfield import SolverConfig
from .params import InteractionParams, SchemeParams, mhz

_SCHEME_KEYS = ("omega1", "omega2", "omega3", "delta1", "delta2", "delta3",
                "gamma1", "gamma2", "gamma3")
_INTERACTION_KEYS = ("c6_ref", "n_ref", "n", "c6_direct")
_CLOUD_KEYS = ("n_atoms", "shape", "radius", "density", "edges", "r_min")
_SWEEP_KEYS = ("parameter", "start", "stop", "points", "realizations", "master_seed")
_SOLVER_KEYS = ("tolerance", "damping", "max_iterations", "initial_guess")
_OUTPUT_KEYS = ("spectrum_csv", "summary_json", "eigen_csv", "positions_csv")

_SECTIONS = {
    "scheme": _SCHEME_KEYS,
    "interaction": _INTERACTION_KEYS,
    "cloud": _CLOUD_KEYS,
    "sweep": _SWEEP_KEYS,
    "solver": _SOLVER_KEYS,
    "output": _OUTPUT_KEYS,
}


def _line_of(text: str, section: str, key: str | None = None) -> int:
    """Best-effort 1-based line number of a section header or key line."""
    in_section = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("["):
            if key is None and stripped == f"[{section}]":
                return lineno
            in_section = stripped == f"[{section}]"
        elif key is not None and in_section:
            token = stripped.split("=", 1)[0].split(":", 1)[0].strip()
            if token == key:
                return lineno
    return 0


class _Section:
    """One parsed section with typed, consumed-key access."""

    def __init__(self, name: str, items: dict[str, str], text: str):
        self.name = name
        self.items = dict(items)
        self.text = text

    def _fail(self, key: str, message: str):
        line = _line_of(self.text, self.name, key)
        raise ConfigError(f"line {line}: [{self.name}] {key}: {message}")

    def get_float(self, key: str, default: float | None = None) -> float | None:
        if key not in self.items:
            return default
        raw = self.items.pop(key)
        try:
            return float(raw)
        except ValueError:
            self._fail(key, f"expected a number, got {raw!r}")

    def get_int(self, key: str, default: int | None = None) -> int | None:
        if key not in self.items:
            return default
        raw = self.items.pop(key)
        try:
            return int(raw)
        except ValueError:
            self._fail(key, f"expected an integer, got {raw!r}")

    def get_str(self, key: str, default: str | None = None) -> str | None:
        if key not in self.items:
            return default
        return self.items.pop(key)

    def reject_leftovers(self):
        if self.items:
            key = next(iter(self.items))
            self._fail(key, "unknown key")


@dataclass(frozen=True)
class RunConfig:
    """Fully-resolved run configuration.

    `resolved` holds every setting in config-file units (MHz, um), suitable
    for hashing and for re-serialization via `to_ini()`; the typed fields
    hold the internal angular-unit objects.
    """

    scheme: SchemeParams
    interaction: InteractionParams | None
    geometry: CloudGeometry | None
    solver: SolverConfig
    sweep_parameter: str
    sweep_start: float  # internal units (rad/s, or plain n)
    sweep_stop: float
    sweep_points: int
    n_realizations: int
    master_seed: int
    output: dict[str, str]
    resolved: dict

    def sweep_spec(self) -> SweepSpec:
        if self.interaction is None or self.geometry is None:
            raise ConfigError("config has no [interaction]/[cloud] section; "
                              "cannot run an ensemble sweep")
        return SweepSpec(
            parameter=self.sweep_parameter,
            start=self.sweep_start, stop=self.sweep_stop, points=self.sweep_points,
            scheme=self.scheme, interaction=self.interaction,
            geometry=self.geometry, solver=self.solver,
            n_realizations=self.n_realizations)

    def to_ini(self) -> str:
        lines = []
        for section, data in self.resolved.items():
            lines.append(f"[{section}]")
            for key, value in data.items():
                lines.append(f"{key} = {value}")
            lines.append("")
        return "\n".join(lines)

    def config_hash(self) -> str:
        blob = json.dumps(self.resolved, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_config(text: str, require_ensemble: bool = True) -> RunConfig:
    """Parse and validate configuration text.

    With require_ensemble=False the [interaction] and [cloud] sections may be
    absent (enough for eigenvalue runs).  Raises ConfigError with a line
    number on anything unknown, malformed, or inconsistent.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"),
                                       interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"line {_line_of(text, section)}: unknown section [{section}]")

    def section(name: str) -> _Section | None:
        if not parser.has_section(name):
            return None
        return _Section(name, dict(parser.items(name)), text)

    resolved: dict[str, dict] = {}

    # [scheme]
    sch = section("scheme")
    if sch is None:
        raise ConfigError("missing required section [scheme]")
    scheme_mhz = {k: (sch.get_float(k, 0.0)) for k in _SCHEME_KEYS}
    sch.reject_leftovers()
    resolved["scheme"] = {k: _fmt(v) for k, v in scheme_mhz.items()}
    try:
        scheme = SchemeParams(**{k: mhz(v) for k, v in scheme_mhz.items()})
    except ConfigError as exc:
        raise ConfigError(f"line {_line_of(text, 'scheme')}: [scheme] {exc}") from None

    # [interaction]
    interaction = None
    inter = section("interaction")
    if inter is not None:
        c6_ref = inter.get_float("c6_ref")
        n_ref = inter.get_float("n_ref")
        n = inter.get_float("n")
        c6_direct = inter.get_float("c6_direct")
        inter.reject_leftovers()
        entries = {}
        for key, val in (("c6_ref", c6_ref), ("n_ref", n_ref), ("n", n), ("c6_direct", c6_direct)):
            if val is not None:
                entries[key] = _fmt(val)
        resolved["interaction"] = entries
        try:
            interaction = InteractionParams(
                c6_ref=None if c6_ref is None else mhz(c6_ref),
                n_ref=n_ref, n=n,
                c6_direct=None if c6_direct is None else mhz(c6_direct))
        except ConfigError as exc:
            raise ConfigError(
                f"line {_line_of(text, 'interaction')}: [interaction] {exc}") from None
    elif require_ensemble:
        raise ConfigError("missing required section [interaction]")

    # [cloud]
    geometry = None
    cl = section("cloud")
    if cl is not None:
        n_atoms = cl.get_int("n_atoms")
        if n_atoms is None:
            cl._fail("n_atoms", "required key missing")
        shape = cl.get_str("shape", "sphere")
        radius = cl.get_float("radius")
        density = cl.get_float("density")
        edges_raw = cl.get_str("edges")
        r_min = cl.get_float("r_min", 0.5)
        cl.reject_leftovers()
        given = [x for x in ("radius", "density", "edges")
                 if {"radius": radius, "density": density, "edges": edges_raw}[x] is not None]
        if len(given) != 1:
            raise ConfigError(
                f"line {_line_of(text, 'cloud')}: [cloud] give exactly one of "
                f"radius, density, edges (got {given or 'none'})")
        entries = {"n_atoms": str(n_atoms), "shape": shape}
        edges = None
        if edges_raw is not None:
            try:
                edges = tuple(float(v) for v in edges_raw.split(","))
            except ValueError:
                raise ConfigError(f"line {_line_of(text, 'cloud', 'edges')}: "
                                  "[cloud] edges: expected three comma-separated numbers")
            if len(edges) != 3:
                raise ConfigError(f"line {_line_of(text, 'cloud', 'edges')}: "
                                  "[cloud] edges: expected three comma-separated numbers")
            entries["edges"] = ",".join(_fmt(e) for e in edges)
        elif density is not None:
            radius = sphere_radius_from_density(n_atoms, density)
            entries["density"] = _fmt(density)
        else:
            entries["radius"] = _fmt(radius)
        entries["r_min"] = _fmt(r_min)
        resolved["cloud"] = entries
        try:
            geometry = CloudGeometry(n_atoms=n_atoms, shape=shape, radius=radius,
                                     edges=edges, r_min=r_min, seed=0)
        except ConfigError as exc:
            raise ConfigError(f"line {_line_of(text, 'cloud')}: [cloud] {exc}") from None
    elif require_ensemble:
        raise ConfigError("missing required section [cloud]")

    # [sweep]
    sw = section("sweep")
    if sw is None or not sw.items:
        raise ConfigError("missing or empty [sweep] section")
    parameter = sw.get_str("parameter")
    if parameter is None:
        sw._fail("parameter", "required key missing")
    if parameter not in SWEEPABLE:
        raise ConfigError(f"line {_line_of(text, 'sweep', 'parameter')}: "
                          f"[sweep] parameter must be one of {SWEEPABLE}")
    start = sw.get_float("start")
    stop = sw.get_float("stop")
    points = sw.get_int("points")
    if start is None or stop is None or points is None:
        raise ConfigError(f"line {_line_of(text, 'sweep')}: "
                          "[sweep] needs parameter, start, stop, points")
    realizations = sw.get_int("realizations", 1)
    master_seed = sw.get_int("master_seed", 0)
    sw.reject_leftovers()
    resolved["sweep"] = {"parameter": parameter, "start": _fmt(float(start)),
                         "stop": _fmt(float(stop)), "points": str(points),
                         "realizations": str(realizations), "master_seed": str(master_seed)}
    scale = 1.0 if parameter == "n" else None
    start_internal = float(start) if scale else mhz(float(start))
    stop_internal = float(stop) if scale else mhz(float(stop))
    if points < 2:
        raise ConfigError(f"line {_line_of(text, 'sweep', 'points')}: "
                          "[sweep] points must be >= 2")

    # [solver]
    so = section("solver")
    if so is None:
        so = _Section("solver", {}, text)
    tolerance = so.get_float("tolerance", 1e-6)
    damping = so.get_float("damping", 0.5)
    max_iterations = so.get_int("max_iterations", 500)
    initial_guess = so.get_str("initial_guess", "non-interacting")
    so.reject_leftovers()
    resolved["solver"] = {"tolerance": _fmt(tolerance), "damping": _fmt(damping),
                          "max_iterations": str(max_iterations),
                          "initial_guess": initial_guess}
    try:
        solver = SolverConfig(tolerance=tolerance, damping=damping,
                              max_iterations=max_iterations, initial_guess=initial_guess)
    except ConfigError as exc:
        raise ConfigError(f"line {_line_of(text, 'solver')}: [solver] {exc}") from None

    # [output]
    out = section("output")
    output: dict[str, str] = {}
    if out is not None:
        for key in _OUTPUT_KEYS:
            val = out.get_str(key)
            if val is not None:
                output[key] = val
        out.reject_leftovers()
        if output:
            resolved["output"] = dict(output)

    return RunConfig(scheme=scheme, interaction=interaction, geometry=geometry,
                     solver=solver, sweep_parameter=parameter,
                     sweep_start=start_internal, sweep_stop=stop_internal,
                     sweep_points=points, n_realizations=realizations,
                     master_seed=master_seed, output=output, resolved=resolved)


def load_config(path: str, require_ensemble: bool = True) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), require_ensemble=require_ensemble)
