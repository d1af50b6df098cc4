"""Command-line front end.

Subcommands:
    sweep      free-form (p, theta) grid sweep to CSV; flags or a flat
               ``key = value`` spec file (flags win)
    preset     one-command reproduction of the four figure datasets
    headlines  print the headline-number report

Exit codes: 0 success, 1 rejected input, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import re
import sys

from .errors import InputError, NumericalError
from .sweep import (
    CHANNEL_MODES,
    PRESETS,
    QUANTITIES,
    SweepSpec,
    emit_csv,
    preset_spec,
    report_headlines,
    run_sweep,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2

_PI_PATTERN = re.compile(
    r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$", re.IGNORECASE
)


def parse_angle(text: str) -> float:
    """Parse an angle in radians; accepts plain floats and pi fractions
    such as ``pi``, ``pi/4``, ``3*pi/8`` or ``0.5pi``."""
    match = _PI_PATTERN.match(text)
    if match:
        coeff_text, denom_text = match.groups()
        if coeff_text in ("", "+"):
            coeff = 1.0
        elif coeff_text == "-":
            coeff = -1.0
        else:
            coeff = float(coeff_text)
        denom = float(denom_text) if denom_text else 1.0
        if denom == 0.0:
            raise InputError(f"zero denominator in angle {text!r}")
        return coeff * math.pi / denom
    try:
        return float(text)
    except ValueError:
        raise InputError(f"cannot parse angle {text!r}") from None


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route through InputError so
    # usage problems land on the rejected-input exit code instead
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nmems", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a (p, theta) grid sweep to CSV")
    sweep.add_argument("--spec-file", help="flat key = value file with the flags below")
    sweep.add_argument("--p-min", type=float)
    sweep.add_argument("--p-max", type=float)
    sweep.add_argument("--p-steps", type=int)
    sweep.add_argument("--theta-min", type=parse_angle)
    sweep.add_argument("--theta-max", type=parse_angle)
    sweep.add_argument("--theta-steps", type=int)
    sweep.add_argument(
        "--quantities", help="comma-separated; known: " + ", ".join(QUANTITIES)
    )
    sweep.add_argument("--channel-mode", choices=CHANNEL_MODES)
    sweep.add_argument("--out", help="output CSV path")

    preset = sub.add_parser("preset", help="emit one of the figure datasets")
    preset.add_argument("name", choices=sorted(PRESETS))
    preset.add_argument("--out", help="output CSV path (default <name>.csv)")

    sub.add_parser("headlines", help="print the headline-number report")
    return parser


_FILE_KEYS = {
    "p_min": ("p_min", float),
    "p_max": ("p_max", float),
    "p_steps": ("p_steps", int),
    "theta_min": ("theta_min", parse_angle),
    "theta_max": ("theta_max", parse_angle),
    "theta_steps": ("theta_steps", int),
    "quantities": ("quantities", str),
    "channel_mode": ("channel_mode", str),
    "out": ("out", str),
}


def load_spec_file(path: str) -> dict:
    """Read a flat ``key = value`` sweep description (keys mirror the flags;
    hyphens and underscores are interchangeable; # starts a comment)."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_").lower()
            value = value.strip()
            if key not in _FILE_KEYS:
                raise InputError(
                    f"{path}:{lineno}: unknown key {key!r}; known keys: "
                    + ", ".join(sorted(_FILE_KEYS))
                )
            target, convert = _FILE_KEYS[key]
            try:
                values[target] = convert(value)
            except (ValueError, InputError) as exc:
                raise InputError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def _split_quantities(text: str) -> tuple:
    names = tuple(q.strip() for q in text.split(",") if q.strip())
    if not names:
        raise InputError("empty quantity list")
    return names


def _run_sweep_command(ns) -> int:
    settings = {}
    if ns.spec_file:
        settings.update(load_spec_file(ns.spec_file))
    for key in ("p_min", "p_max", "p_steps", "theta_min", "theta_max",
                "theta_steps", "quantities", "channel_mode", "out"):
        flag_value = getattr(ns, key)
        if flag_value is not None:
            settings[key] = flag_value

    out = settings.pop("out", "")
    if not out:
        raise InputError("an output path is required (--out or 'out =' in the file)")
    quantities = settings.pop("quantities", None)
    if quantities is None:
        raise InputError(
            "no quantities requested; choose from: " + ", ".join(QUANTITIES)
        )
    if isinstance(quantities, str):
        quantities = _split_quantities(quantities)

    defaults = SweepSpec.__dataclass_fields__
    spec = SweepSpec(
        p_min=settings.get("p_min", defaults["p_min"].default),
        p_max=settings.get("p_max", defaults["p_max"].default),
        p_steps=settings.get("p_steps", defaults["p_steps"].default),
        theta_min=settings.get("theta_min", defaults["theta_min"].default),
        theta_max=settings.get("theta_max", defaults["theta_max"].default),
        theta_steps=settings.get("theta_steps", defaults["theta_steps"].default),
        quantities=tuple(quantities),
        channel_mode=settings.get("channel_mode", defaults["channel_mode"].default),
        output_path=out,
    )
    emit_csv(run_sweep(spec), out)
    print(f"wrote {out}")
    return EXIT_OK


def _run_preset_command(ns) -> int:
    spec = preset_spec(ns.name)
    out = ns.out or spec.output_path
    emit_csv(run_sweep(spec), out)
    print(f"wrote {out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "sweep":
            return _run_sweep_command(ns)
        if ns.command == "preset":
            return _run_preset_command(ns)
        if ns.command == "headlines":
            sys.stdout.write(report_headlines())
            return EXIT_OK
        raise InputError(f"unknown command {ns.command!r}")
    except (InputError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
