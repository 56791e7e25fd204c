import json
import os
from typing import Any, Dict, List, Type, Union, get_args, get_origin

from ..utils.enum import Method, Metric
from ..utils.logger import get_formatted_logger
from .variables.base import BaseConfig
from .variables.default import DEFAULT_CONFIG

logger = get_formatted_logger("hdl_labeler.config")


class Config:
    """Config class for the labeling engine."""

    def __init__(self, config_path: str | None = None):
        """Initialize the config class."""
        self.config_path = config_path
        config_to_use = self.load_config(config_path)
        self._set_attributes(config_to_use)

    def _set_attributes(self, config: Dict[str, Any]) -> None:
        for key, value in config.items():
            if key not in BaseConfig.__annotations__:
                logger.warning(f"Ignoring unknown config key '{key}'")
                continue
            value = self.convert_value(key, value, BaseConfig.__annotations__[key])
            setattr(self, key.lower(), value)

        self.method = self.parse_method(self.method)
        self.metric = self.parse_metric(self.metric)
        self.k = self.parse_k(self.k)

    @classmethod
    def load_config(cls, config_path: str | None) -> Dict[str, Any]:
        """Load a configuration file and merge it over the defaults."""
        if config_path is None:
            return dict(DEFAULT_CONFIG)

        if not os.path.exists(config_path):
            raise FileNotFoundError(f"Configuration not found at '{config_path}'")

        with open(config_path, "r", encoding="utf-8") as f:
            custom_config = json.load(f)
        if not isinstance(custom_config, dict):
            raise ValueError(f"{config_path}: configuration must be a JSON object")

        # Merge with default config to ensure all keys are present
        merged_config: Dict[str, Any] = dict(DEFAULT_CONFIG)
        merged_config.update({key.upper(): value for key, value in custom_config.items()})
        return merged_config

    @staticmethod
    def parse_method(method: str | Method) -> Method:
        if isinstance(method, Method):
            return method
        try:
            return Method(method)
        except ValueError:
            raise ValueError(
                f"Invalid method: {method}. Valid options are: {', '.join(m.value for m in Method)}"
            )

    @staticmethod
    def parse_metric(metric: str | Metric) -> Metric:
        if isinstance(metric, Metric):
            return metric
        try:
            return Metric(metric)
        except ValueError:
            raise ValueError(
                f"Invalid metric: {metric}. Valid options are: {', '.join(m.value for m in Metric)}"
            )

    @staticmethod
    def parse_k(k: int | str) -> int | str:
        """Parse k into a positive integer or the literal 'auto'."""
        if isinstance(k, str):
            if k.strip().lower() == "auto":
                return "auto"
            try:
                k = int(k)
            except ValueError:
                raise ValueError(f"Invalid k: {k!r}. Use a positive integer or 'auto'")
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise ValueError(f"Invalid k: {k!r}. Use a positive integer or 'auto'")
        return k

    @staticmethod
    def convert_value(key: str, value: Any, type_hint: Type) -> Any:
        """Convert a config value to the type declared in BaseConfig."""
        origin = get_origin(type_hint)
        args = get_args(type_hint)

        if origin is Union:
            for arg in args:
                try:
                    return Config.convert_value(key, value, arg)
                except (TypeError, ValueError):
                    continue
            raise ValueError(f"Cannot convert {key}={value!r} to any of {args}")

        if type_hint is bool:
            if isinstance(value, bool):
                return value
            if isinstance(value, str):
                return value.lower() in ("true", "1", "yes", "on")
            raise ValueError(f"{key} must be a boolean")
        elif type_hint is int:
            if isinstance(value, bool) or isinstance(value, float):
                raise ValueError(f"{key} must be an integer")
            return int(value)
        elif type_hint is float:
            if isinstance(value, bool):
                raise ValueError(f"{key} must be a number")
            return float(value)
        elif type_hint is str:
            if not isinstance(value, str):
                raise ValueError(f"{key} must be a string")
            return value
        elif origin is list or origin is List:
            return list(value)
        else:
            raise ValueError(f"Unsupported type {type_hint} for key {key}")
