"""File-based data layer for instances and activation functions."""

from stochmatch.data.feeds.instance_feed import ActivationFeed, InstanceFeed
from stochmatch.data.providers.json_files import (
    JsonActivationFeed,
    JsonInstanceFeed,
    load_activation_file,
    load_instance_file,
)
from stochmatch.data.providers.normalizers import InstanceFileError

__all__ = [
    "ActivationFeed",
    "InstanceFeed",
    "InstanceFileError",
    "JsonActivationFeed",
    "JsonInstanceFeed",
    "load_activation_file",
    "load_instance_file",
]
