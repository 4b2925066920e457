"""Name → factory registry for tasks, models, datasets and transforms.

The default registry is populated once at import of the package and is
immutable afterwards in normal operation, so concurrent reads are safe.
"""

from __future__ import annotations

import enum

from ..errors import DuplicateRegistration, SchemaError, UnknownComponent


class ComponentKind(enum.Enum):
    TASK = "task"
    MODEL = "model"
    DATASET = "dataset"
    TRANSFORM = "transform"


def coerce_kind(kind) -> ComponentKind:
    if isinstance(kind, ComponentKind):
        return kind
    try:
        return ComponentKind(kind)
    except ValueError:
        valid = ", ".join(k.value for k in ComponentKind)
        raise SchemaError(f"unknown component kind {kind!r} (expected one of: {valid})") from None


class Registry:
    def __init__(self):
        self._factories: dict[ComponentKind, dict[str, object]] = {
            kind: {} for kind in ComponentKind
        }

    def register(self, kind, classname: str, factory) -> None:
        kind = coerce_kind(kind)
        if not isinstance(classname, str) or not classname:
            raise SchemaError(f"classname must be a non-empty string, got {classname!r}")
        table = self._factories[kind]
        if classname in table:
            raise DuplicateRegistration(f"{kind.value} {classname!r} already registered")
        table[classname] = factory

    def resolve(self, kind, classname: str):
        kind = coerce_kind(kind)
        try:
            return self._factories[kind][classname]
        except KeyError:
            raise UnknownComponent(kind.value, classname) from None

    def names(self, kind) -> tuple[str, ...]:
        return tuple(sorted(self._factories[coerce_kind(kind)]))


REGISTRY = Registry()


def register_component(kind, classname: str, factory, registry: Registry | None = None) -> None:
    (registry or REGISTRY).register(kind, classname, factory)


def resolve_component(kind, classname: str, registry: Registry | None = None):
    return (registry or REGISTRY).resolve(kind, classname)
