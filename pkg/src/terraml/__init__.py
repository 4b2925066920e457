"""terraml: config-driven machine-learning workflows for Earth-observation
image classification.

Validated JSON run configurations bind a task to a model and dataset(s);
tasks train, evaluate, apply or inspect. See README.md for the config schema
and the CLI.
"""

from .core.builtins import register_builtins
from .core.registry import (
    REGISTRY,
    ComponentKind,
    Registry,
    register_component,
    resolve_component,
)
from .core.run import instantiate_run
from .core.schema import ComponentSpec, RunConfig, load_config_file, parse_config, validate_config
from .datasets import image_loader
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

register_builtins()

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
    "image_loader",
    "register_builtins",
    "KERNEL_BACKEND",
    "__version__",
]
