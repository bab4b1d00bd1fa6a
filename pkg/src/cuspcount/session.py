"""Wiring of provider, calculus and persisted cache for one run."""
from __future__ import annotations

from pathlib import Path

from . import store
from .errors import NonIntegralError
from .gw_base import BaseKey, BaseNumbers, ProviderConfig
from .taut import Tautological


class Session:
    def __init__(self, mode: str = "engine", table: str | Path | None = None,
                 check_oracle: bool = True, cache: str | Path | None = None):
        config = ProviderConfig(mode=mode, table_path=Path(table) if table else None,
                                check_oracle=check_oracle)
        self.base = BaseNumbers(config)
        self.calc = Tautological(self.base)
        self.cache_path = Path(cache) if cache else None
        if self.cache_path is not None and self.cache_path.exists():
            self.seed(store.load(self.cache_path))

    def seed(self, records) -> None:
        base_values = {}
        phi_values = {}
        for rec in records:
            if rec.kind == "N":
                if rec.value.denominator != 1:
                    raise NonIntegralError(f"cached base number {rec.key} = {rec.value} is not an integer")
                base_values[BaseKey(*rec.key)] = int(rec.value)
            else:
                phi_values[rec.key] = rec.value
        self.base.seed(base_values)
        self.calc.seed_phi(phi_values)

    def records(self) -> list[store.MemoRecord]:
        out = [store.MemoRecord("N", (k.d, k.r, k.s, k.theta), v) for k, v in self.base.computed().items()]
        out += [store.MemoRecord("PHI", k, v) for k, v in self.calc.cached_phi().items()]
        return out

    def persist(self) -> None:
        if self.cache_path is not None:
            store.save(self.cache_path, self.records())
