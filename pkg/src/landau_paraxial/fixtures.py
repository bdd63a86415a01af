"""Reference fixture table: named constants with provenance strings.

Every value is produced by scripts/generate_fixtures.py (arbitrary-precision
oracle) and stored in data/fixtures.txt in the same key-value format as run
configs, with a provenance.<name> twin key per entry. Golden values are never
hand-typed.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import DomainError, FixtureLookupError

_HEADER = (
    "# landau-paraxial reference fixtures\n"
    "# regenerate with: python scripts/generate_fixtures.py\n"
)


@dataclass(frozen=True)
class Fixture:
    name: str
    value: float | int
    provenance: str


def _parse_value(text: str):
    try:
        return int(text, 10)
    except ValueError:
        return float(text)


def parse_fixtures(text: str) -> dict[str, Fixture]:
    values = {}
    provenance = {}
    order = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key.startswith("provenance."):
            provenance[key[len("provenance."):]] = value
        else:
            values[key] = _parse_value(value)
            order.append(key)
    table = {}
    for name in order:
        if name not in provenance:
            raise DomainError(f"fixture {name!r} has no provenance entry")
        table[name] = Fixture(name, values[name], provenance[name])
    return table


def emit_fixtures(table: dict[str, Fixture]) -> str:
    lines = [_HEADER.rstrip("\n")]
    for fixture in table.values():
        if isinstance(fixture.value, int):
            rendered = str(fixture.value)
        else:
            rendered = f"{fixture.value:.16e}"
        lines.append(f"{fixture.name} = {rendered}")
        lines.append(f"provenance.{fixture.name} = {fixture.provenance}")
    return "\n".join(lines) + "\n"


def _table() -> dict[str, Fixture]:
    text = resources.files("landau_paraxial").joinpath("data/fixtures.txt").read_text()
    return parse_fixtures(text)


def load_fixture(name: str) -> Fixture:
    """Look up a fixture by name; unknown names raise FixtureLookupError."""
    table = _table()
    if name not in table:
        raise FixtureLookupError(name)
    return table[name]


def all_fixtures() -> dict[str, Fixture]:
    return _table()
