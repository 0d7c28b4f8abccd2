import os
from functools import reduce
from os.path import expandvars
from typing import Any, Callable, TypeVar

import yaml

T = TypeVar("T")


class DotDict(dict):
    """dict with attribute access and dotted-key lookup ("sweep.workers")."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        for key, value in list(self.items()):
            super().__setitem__(key, self._convert(value))

    def __getattr__(self, k: str) -> Any:
        try:
            return self[k]
        except KeyError as e:
            raise AttributeError(k) from e

    def __setattr__(self, k: str, v: Any) -> None:
        self[k] = v

    def __setitem__(self, k: str, v: Any) -> None:
        super().__setitem__(k, self._convert(v))

    def __getitem__(self, k: Any) -> Any:
        if isinstance(k, str) and "." in k:
            k = k.split(".")
        if isinstance(k, (list, tuple)):
            return reduce(lambda d, kk: d[kk], k, self)
        return super().__getitem__(k)

    def get(self, k: Any, default: Any = None) -> Any:
        try:
            return self[k]
        except KeyError:
            return default

    @staticmethod
    def _convert(value: Any) -> Any:
        if isinstance(value, dict) and not isinstance(value, DotDict):
            return DotDict(value)
        if isinstance(value, list):
            return [DotDict._convert(item) for item in value]
        return value


def load_configurations(path: str) -> DotDict:
    """
    Used for parsing configuration files

    :param str path: path to conf file
    :returns DotDict: dictionary accessing fields with dot notation
    """
    with open(path) as f:
        cfg = yaml.safe_load(expandvars(f.read()))
    return DotDict(cfg or {})


def resolve_setting(
    flag_value: T | None,
    env_var: str,
    default: T,
    cast: Callable[[str], T],
) -> T:
    """
    Pick a setting by precedence: explicit flag > environment variable > config.

    :param flag_value: Value given on the command line, None when absent
    :param env_var: Environment variable consulted next
    :param default: Value from the YAML config
    :param cast: Converter applied to the environment string
    :return: The resolved value
    """
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(env_var)
    if raw not in (None, ""):
        return cast(raw)
    return default


def print_config(config: Any, indent: int = 0) -> str:
    """
    Generate a formatted string representation of the configuration.

    :param config: Configuration mapping (or nested list) to format
    :param indent: Indentation level (default: 0)
    :return: Formatted string representation
    """
    lines = []
    prefix = " " * indent

    items = config.items() if isinstance(config, dict) else enumerate(config)
    for key, value in items:
        label = f"{prefix}-" if isinstance(config, list) else f"{prefix}{key}:"
        if isinstance(value, (dict, list)):
            lines.append(label)
            lines.append(print_config(value, indent + 2))
        else:
            lines.append(f"{label} {value}")

    return "\n".join(lines)
