from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass, field, replace
import io
import json
import logging
from pathlib import Path
import sys
from typing import Any, Sequence

from symdef.algebra import polyhedra, quasipoly
from symdef.algebra.decomposition import has_embedded_primes, primary_decomposition
from symdef.algebra.family_abc import FamilyParams, family_ideal, leading_coefficient, quasi_period
from symdef.algebra.ideals import MonomialIdeal, format_ideal, power
from symdef.algebra.quasipoly import NoFitError
from symdef.algebra.symbolic_powers import symbolic_power
from symdef.config import Settings
from symdef.parser import parse_ideal, parse_variables
from symdef.services.defect_service import ENGINES, DefectService, InvariantViolation
from symdef.services.logger_service import LoggerService
from symdef.storage import MessagePackStore, StoreResetError


LOGGER = logging.getLogger("symdef.cli")
SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_FIT = 2
EXIT_INTERNAL = 3

COMMANDS = (
    "decompose",
    "power",
    "sympower",
    "closure",
    "sdef",
    "isdef",
    "np-hrep",
    "sp-hrep",
    "fit",
    "family",
    "show",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    variables: tuple[str, ...] = ("x", "y", "z")
    ideal_text: str = ""
    n_from: int = 1
    n_to: int = 1
    n: int = 1
    engine: str = "general"
    fmt: str = "csv"
    out: Path | None = None
    abc: tuple[int, int, int] | None = None
    input_path: Path | None = None
    check: bool = False
    max_period: int | None = None
    max_degree: int | None = None
    settings: Settings = field(default_factory=Settings.load)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdef", description="Symbolic powers and symbolic defect of monomial ideals.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("n", nargs="?", type=int, help="exponent for power/sympower")
    parser.add_argument("--vars", default="x,y,z", help="comma-separated variable names, in coordinate order")
    parser.add_argument("--ideal", default="", help='ideal expression, e.g. "(x^2,y) & (y^3,z)"')
    parser.add_argument("--from", dest="n_from", type=int, default=1)
    parser.add_argument("--to", dest="n_to", type=int, default=None)
    parser.add_argument("--engine", choices=ENGINES, default="general")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--abc", type=int, nargs=3, metavar=("A", "B", "C"), default=None)
    parser.add_argument("--input", dest="input_path", type=Path, default=None, help="CSV of n,value for fit ('-' for stdin)")
    parser.add_argument("--max-period", type=int, default=None)
    parser.add_argument("--max-degree", type=int, default=None)
    parser.add_argument("--check", action="store_true", help="cross-check sdef engines")
    parser.add_argument("--no-cache", action="store_true")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.load()
    except RuntimeError as exc:
        logging.basicConfig(stream=sys.stderr, level=logging.WARNING)
        LOGGER.error("%s", exc)
        return EXIT_INPUT
    if args.no_cache:
        settings = replace(settings, cache_enabled=False)
    level = settings.log_level
    if args.verbose == 1:
        level = min(level, logging.INFO)
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        variables = parse_variables(args.vars)
    except ValueError as exc:
        LOGGER.error("%s", exc)
        return EXIT_INPUT
    config = RunConfig(
        command=args.command,
        variables=variables,
        ideal_text=args.ideal,
        n_from=args.n_from,
        n_to=args.n_to if args.n_to is not None else args.n_from,
        n=args.n if args.n is not None else 1,
        engine=args.engine,
        fmt=args.fmt,
        out=args.out,
        abc=tuple(args.abc) if args.abc else None,
        input_path=args.input_path,
        check=args.check,
        max_period=args.max_period,
        max_degree=args.max_degree,
        settings=settings,
    )
    return run(config)


def run(config: RunConfig) -> int:
    store = MessagePackStore(config.settings.store_path)
    code = _run(config, store)
    if not config.settings.cache_enabled:
        return code
    try:
        store.save_if_dirty()
    except OSError as exc:
        LOGGER.error("could not save %s: %s", store.path, exc)
        return EXIT_INPUT if code == EXIT_OK else code
    return code


def _run(config: RunConfig, store: MessagePackStore) -> int:
    try:
        if config.settings.cache_enabled:
            _load_store(store)
        else:
            store.use_defaults()
        output = _dispatch(config, store)
        _emit(output, config.out)
    except NoFitError as exc:
        LOGGER.error("%s", exc)
        return EXIT_NO_FIT
    except InvariantViolation as exc:
        LOGGER.error("%s", exc)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        LOGGER.error("%s", exc)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        LOGGER.error("internal error: %s", exc)
        LOGGER.debug("traceback", exc_info=True)
        return EXIT_INTERNAL
    return EXIT_OK


def _dispatch(config: RunConfig, store: MessagePackStore) -> str:
    command = config.command
    if command == "fit":
        return _fit(config)
    if command == "family":
        return _family(config, store)
    ideal = _ideal(config)
    if command == "show":
        return _show(config, ideal)
    if command == "decompose":
        return _decompose(config, ideal)
    if command in ("power", "sympower", "closure"):
        if command != "closure" and config.n < 1:
            raise ValueError(f"{command} needs n >= 1, got {config.n}.")
        if command == "power":
            result = power(ideal, config.n)
        elif command == "sympower":
            result = symbolic_power(ideal, config.n)
        else:
            result = polyhedra.integral_closure(ideal)
        return _ideal_output(config, result)
    if command in ("sdef", "isdef"):
        return _defect(config, store, ideal)
    if command == "np-hrep":
        return _json(polyhedra.hrep(polyhedra.np_of(ideal)).to_json())
    if command == "sp-hrep":
        return _json(polyhedra.sp_hrep(polyhedra.sp_of(ideal)).to_json())
    raise ValueError(f"Unknown command {command!r}.")


def _ideal(config: RunConfig) -> MonomialIdeal:
    if not config.ideal_text.strip():
        raise ValueError(f"{config.command} needs --ideal.")
    return parse_ideal(config.ideal_text, config.variables)


def _service(config: RunConfig, store: MessagePackStore) -> DefectService:
    return DefectService(store, LoggerService(store), config.settings)


def _defect(config: RunConfig, store: MessagePackStore, ideal: MonomialIdeal) -> str:
    service = _service(config, store)
    _check_range(config)
    params = FamilyParams(*config.abc) if config.abc else None
    if config.check and config.command == "sdef":
        service.cross_check(ideal, config.n_from, config.n_to)
    values = service.sequence(config.command, ideal, config.n_from, config.n_to, config.engine, params)
    LOGGER.info("telemetry %s", service.telemetry())
    if config.fmt == "json":
        return _json(
            {
                "schema_version": SCHEMA_VERSION,
                "kind": config.command,
                "engine": config.engine,
                "values": {str(n): value for n, value in values.items()},
            }
        )
    return _csv(values)


def _family(config: RunConfig, store: MessagePackStore) -> str:
    if config.abc is None:
        raise ValueError("family needs --abc A B C.")
    _check_range(config)
    params = FamilyParams(*config.abc)
    ideal = family_ideal(params)
    service = _service(config, store)
    values = service.sequence("sdef", ideal, config.n_from, config.n_to, "family", params)
    if config.check:
        service.cross_check(ideal, config.n_from, config.n_to)
    period = quasi_period(params)
    coefficient = leading_coefficient(params)
    if config.fmt == "json":
        return _json(
            {
                "schema_version": SCHEMA_VERSION,
                "abc": list(params.as_tuple()),
                "ideal": format_ideal(ideal, ("x", "y", "z")),
                "period": period,
                "leading_coefficient": str(coefficient),
                "values": {str(n): value for n, value in values.items()},
            }
        )
    header = f"# abc={params.a},{params.b},{params.c} period={period} leading_coefficient={coefficient}\n"
    return header + _csv(values)


def _fit(config: RunConfig) -> str:
    if config.input_path is None:
        raise ValueError("fit needs --input PATH (or '-' for stdin).")
    if str(config.input_path) == "-":
        text = sys.stdin.read()
    else:
        text = config.input_path.read_text(encoding="utf-8")
    values = _read_csv(text)
    max_period = config.max_period if config.max_period is not None else config.settings.max_period
    max_degree = config.max_degree if config.max_degree is not None else config.settings.max_degree
    fitted = quasipoly.fit(values, max_period, max_degree)
    if fitted.window_limited:
        LOGGER.warning("fit is window-limited: the verified tail is short for period %d", fitted.period)
    return _json(quasipoly.to_json(fitted))


def _show(config: RunConfig, ideal: MonomialIdeal) -> str:
    lines = [format_ideal(ideal, config.variables)]
    if ideal.is_proper_nonzero:
        decomposition = primary_decomposition(ideal)
        for component in decomposition.components:
            names = ",".join(config.variables[i] for i in sorted(component.support))
            lines.append(f"  ({names}): {format_ideal(component.ideal, config.variables)}")
        lines.append(f"  embedded primes: {'yes' if has_embedded_primes(ideal) else 'no'}")
    return "\n".join(lines) + "\n"


def _decompose(config: RunConfig, ideal: MonomialIdeal) -> str:
    decomposition = primary_decomposition(ideal)
    names = config.variables
    return _json(
        {
            "schema_version": SCHEMA_VERSION,
            "vars": list(names),
            "ideal": format_ideal(ideal, names),
            "components": [
                {
                    "support": [names[i] for i in sorted(component.support)],
                    "ideal": format_ideal(component.ideal, names),
                }
                for component in decomposition.components
            ],
            "max_supports": [[names[i] for i in sorted(prime)] for prime in decomposition.max_supports],
            "embedded": has_embedded_primes(ideal),
        }
    )


def _ideal_output(config: RunConfig, ideal: MonomialIdeal) -> str:
    text = format_ideal(ideal, config.variables)
    if config.fmt == "json":
        return _json(
            {
                "schema_version": SCHEMA_VERSION,
                "ideal": text,
                "generators": [list(gen) for gen in ideal.generators],
            }
        )
    return text + "\n"


def _check_range(config: RunConfig) -> None:
    if not 1 <= config.n_from <= config.n_to:
        raise ValueError(f"Range must satisfy 1 <= from <= to, got {config.n_from}..{config.n_to}.")


def _csv(values: dict[int, int]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "value"])
    for n in sorted(values):
        writer.writerow([n, values[n]])
    return buffer.getvalue()


def _read_csv(text: str) -> dict[int, int]:
    rows = [row for row in csv.reader(line for line in text.splitlines() if not line.startswith("#")) if row]
    if not rows or [cell.strip() for cell in rows[0]] != ["n", "value"]:
        raise ValueError("Expected a CSV with header 'n,value'.")
    values: dict[int, int] = {}
    for row in rows[1:]:
        try:
            values[int(row[0])] = int(row[1])
        except (IndexError, ValueError) as exc:
            raise ValueError(f"Malformed CSV row {row!r}.") from exc
    return values


def _json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def _load_store(store: MessagePackStore) -> None:
    try:
        store.load()
    except StoreResetError as exc:
        LOGGER.warning("%s", exc)
