from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
from typing import Callable

from symdef.algebra import polyhedra
from symdef.algebra.family_abc import FamilyParams, family_ideal, family_sdef
from symdef.algebra.ideals import MonomialIdeal, mu_quotient, power
from symdef.algebra.symbolic_powers import has_dimension_one, saturation_symbolic_power, sdef
from symdef.config import Settings
from symdef.services.logger_service import LoggerService
from symdef.storage import MessagePackStore


LOGGER = logging.getLogger("symdef.defect")

KINDS = ("sdef", "isdef")
ENGINES = ("general", "family", "polyhedral")


class InvariantViolation(RuntimeError):
    pass


class DefectService:
    """Evaluates sdef/isdef over a range of n through one of three engines, with a result cache."""

    def __init__(self, store: MessagePackStore, logger: LoggerService, settings: Settings) -> None:
        self.store = store
        self.logger = logger
        self.settings = settings
        self._telemetry = {"computed": 0, "cache_hits": 0}

    def telemetry(self) -> dict[str, int]:
        return dict(self._telemetry)

    def detect_family(self, ideal: MonomialIdeal) -> FamilyParams | None:
        if ideal.arity != 3 or not ideal.is_proper_nonzero:
            return None
        a_values = {gen[0] for gen in ideal.generators if gen[1] == 0 and gen[2] == 1 and gen[0] >= 1}
        b_values = {gen[1] for gen in ideal.generators if gen[0] == 1 and gen[2] == 0 and gen[1] >= 1}
        c_values = {gen[2] for gen in ideal.generators if gen[0] == 0 and gen[1] == 1 and gen[2] >= 1}
        for a, b, c in itertools.product(sorted(a_values), sorted(b_values), sorted(c_values)):
            params = FamilyParams(a, b, c)
            if family_ideal(params) == ideal:
                return params
        return None

    def sequence(
        self,
        kind: str,
        ideal: MonomialIdeal,
        n_from: int,
        n_to: int,
        engine: str = "general",
        params: FamilyParams | None = None,
    ) -> dict[int, int]:
        if kind not in KINDS:
            raise ValueError(f"Unknown kind {kind!r}; expected one of {', '.join(KINDS)}.")
        if not 1 <= n_from <= n_to:
            raise ValueError(f"Range must satisfy 1 <= from <= to, got {n_from}..{n_to}.")
        compute = self._engine(kind, ideal, engine, params)
        key = self.cache_key(kind, engine, ideal)
        cached = self.store.cached_sequence(key) if self.settings.cache_enabled else {}
        wanted = range(n_from, n_to + 1)
        missing = [n for n in wanted if str(n) not in cached]
        hits = len(wanted) - len(missing)
        if self.settings.workers > 1 and len(missing) > 1:
            with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
                computed = list(pool.map(compute, missing))
        else:
            computed = [compute(n) for n in missing]
        fresh = dict(zip(missing, computed))
        if self.settings.cache_enabled and fresh:
            cached.update({str(n): value for n, value in fresh.items()})
            self.store.touch()
        self._telemetry["computed"] += len(fresh)
        self._telemetry["cache_hits"] += hits
        self.logger.log(
            "sequence",
            kind=kind,
            engine=engine,
            n_from=n_from,
            n_to=n_to,
            computed=len(fresh),
            cache_hits=hits,
        )
        return {n: int(fresh[n]) if n in fresh else int(cached[str(n)]) for n in wanted}

    def cross_check(self, ideal: MonomialIdeal, n_from: int, n_to: int) -> dict[str, dict[int, int]]:
        """Run every engine that applies to `ideal` and require identical sdef values."""
        results = {"general": self.sequence("sdef", ideal, n_from, n_to, "general")}
        params = self.detect_family(ideal)
        if params is not None:
            results["family"] = self.sequence("sdef", ideal, n_from, n_to, "family", params)
            results["polyhedral"] = self.sequence("sdef", ideal, n_from, n_to, "polyhedral")
        if has_dimension_one(ideal):
            results["saturation"] = {
                n: mu_quotient(saturation_symbolic_power(ideal, n), power(ideal, n)) for n in range(n_from, n_to + 1)
            }
        reference = results["general"]
        for engine, values in results.items():
            mismatched = [n for n in reference if values[n] != reference[n]]
            if mismatched:
                n = mismatched[0]
                raise InvariantViolation(
                    f"Engine {engine} disagrees with general at n={n}: {values[n]} != {reference[n]}."
                )
        self.logger.log("cross_check", engines=sorted(results), n_from=n_from, n_to=n_to)
        return results

    @staticmethod
    def cache_key(kind: str, engine: str, ideal: MonomialIdeal) -> str:
        gens = ";".join(",".join(str(e) for e in gen) for gen in ideal.generators)
        return f"{kind}|{engine}|{ideal.arity}|{gens}"

    def _engine(
        self, kind: str, ideal: MonomialIdeal, engine: str, params: FamilyParams | None
    ) -> Callable[[int], int]:
        if engine == "general":
            if kind == "sdef":
                return lambda n: sdef(ideal, n)
            return lambda n: polyhedra.isdef(ideal, n)
        if engine == "polyhedral":
            if self.detect_family(ideal) is None:
                LOGGER.warning(
                    "polyhedral engine counts lattice points of n*SP outside n*NP; "
                    "it matches %s only when those points generate the closure of I^(n)",
                    kind,
                )
            return lambda n: polyhedra.lattice_defect(ideal, n)
        if engine == "family":
            params = params or self.detect_family(ideal)
            if params is None or family_ideal(params) != ideal:
                raise ValueError("The family engine needs an ideal of the form (x^a, y) & (y^b, z) & (z^c, x).")
            if kind == "isdef":
                LOGGER.debug("family engine: isdef equals sdef for this family")
            return lambda n: family_sdef(params, n)
        raise ValueError(f"Unknown engine {engine!r}; expected one of {', '.join(ENGINES)}.")
