from .registry import (
    REGISTRY,
    ComponentKind,
    Registry,
    register_component,
    resolve_component,
)
from .run import instantiate_run
from .schema import (
    ComponentSpec,
    RunConfig,
    load_config_file,
    parse_config,
    validate_config,
)

__all__ = [
    "REGISTRY",
    "ComponentKind",
    "Registry",
    "register_component",
    "resolve_component",
    "instantiate_run",
    "ComponentSpec",
    "RunConfig",
    "load_config_file",
    "parse_config",
    "validate_config",
]
