"""
marginal.core.Configuration is a parsed marginal.toml; class handles:

1.  Reading the packaged defaults from ``pkg_data/marginal.toml``
2.  Locating a user configuration file, from:

    a.  An explicit path (``from_config``)
    b.  ``marginal.toml`` in the per-user configuration directory
        (via :xref:`appdirs`), if one exists

3.  Selecting a capacity profile from the ``profile`` argument, the
    ``MARGINAL_PROFILE`` environment variable or the file's ``profile`` key
4.  Instantiating each section from the (pydantic) models defined in
    :mod:`marginal.core.cfg`

"""
from __future__ import annotations

import copy
import json
import logging
import os
from pathlib import Path
from typing import Dict, Optional, Type, TypeVar, Union

import toml
from appdirs import AppDirs
from pydantic import ValidationError
from pydantic.json import pydantic_encoder

from marginal import __application__ as application
from marginal import __author__ as author

from . import cfg, errors, paths
from .base import Generic
from .utils.parsing import rmerge_dicts

logger = logging.getLogger(__name__)

PROFILE_ENV_VAR = "MARGINAL_PROFILE"

M = TypeVar("M", bound=cfg.Base)


class Configuration(Generic):
    """
    A parsed `marginal.toml` file.
    """

    def __init__(
        self,
        profile: Optional[str] = None,
        from_config: Optional[Union[Path, str]] = None,
        config_file_nm: Optional[str] = None,
    ):
        """*All keyword arguments optional.*

        Args:
            profile (Optional[str]):
                Capacity profile to apply on top of [limits]; falls back to
                ``MARGINAL_PROFILE`` and then to the file's ``profile`` key.
            from_config (Optional[str, Path]):
                A full path to a specific configuration file to merge over
                the packaged defaults.
            config_file_nm (Optional[str]):
                Name of the user configuration file looked up in the user
                configuration directory; defaults to `marginal.toml`.

        """
        # fmt: off
        super().__init__()

        self.file_nm = config_file_nm or "marginal.toml"
        """str: Configuration file name; defaults to 'marginal.toml'."""

        self.location: Optional[Path] = self._locate(from_config)
        """pathlib.Path: Full path to the user configuration file, if any."""

        raw = self._load(paths.DEFAULTS_PATH)
        if self.location:
            raw = rmerge_dicts(d1=self._load(self.location), d2=raw)

        self.profile: str = (
            profile or os.environ.get(PROFILE_ENV_VAR) or raw.get("profile") or "default"
        )
        """str: Name of the capacity profile in effect."""

        self.profiles: cfg.Profiles = self._section(cfg.Profiles, raw, "profiles")
        limits: cfg.Limits = self._section(cfg.Limits, raw, "limits")
        try:
            self.limits: cfg.Limits = self.profiles.resolve(self.profile, limits)
        except KeyError as e:
            raise errors.UsageError(
                msg=f"unknown capacity profile; known: {', '.join(self.profiles.names())}",
                nm=self.profile,
            ) from e
        except ValidationError as e:
            raise self._invalid(e, f"profiles.{self.profile}") from e
        self.sampling: cfg.Sampling = self._section(cfg.Sampling, raw, "sampling")
        self.output: cfg.Output = self._section(cfg.Output, raw, "output")
        # fmt: on
        logger.debug("configuration loaded; profile '%s'", self.profile)

    def _locate(self, from_config: Optional[Union[Path, str]]) -> Optional[Path]:
        if from_config:
            location = Path(str(from_config))
            if not location.is_file():
                raise errors.UsageError(
                    msg="configuration file does not exist", nm=str(location)
                )
            return location
        user_dir = Path(AppDirs(appname=application, appauthor=author).user_config_dir)
        candidate = user_dir / self.file_nm
        if candidate.is_file():
            logger.debug("using user configuration at %s", candidate)
            return candidate
        return None

    @staticmethod
    def _load(path: Path) -> Dict:
        try:
            with open(path, "r", encoding="utf-8") as r:
                return toml.load(r)
        except toml.TomlDecodeError as e:
            raise errors.UsageError(msg=f"invalid toml: {e}", nm=str(path)) from e

    def _section(self, model: Type[M], raw: Dict, section: str) -> M:
        """Instantiates ``model`` from the ``[section]`` table of ``raw``."""
        try:
            return model(**raw.get(section, {}))
        except ValidationError as e:
            raise self._invalid(e, section) from e

    @staticmethod
    def _invalid(e: ValidationError, section: str) -> errors.UsageError:
        """The first offending field of ``e``, as a usage error naming its alias."""
        first = e.errors()[0]
        field = ".".join(str(loc) for loc in first["loc"])
        return errors.UsageError(
            msg=f"invalid value in [{section}]: {first['msg']}", nm=field
        )

    def with_overrides(
        self,
        limit_n: Optional[int] = None,
        limit_dim: Optional[int] = None,
        limit_monomials: Optional[int] = None,
    ) -> Configuration:
        """A copy with the command-line capacity overrides applied to :attr:`limits`.

        The receiver is left unchanged so one configuration can serve many runs.

        """
        overridden = copy.copy(self)
        overridden.limits = self.limits.with_overrides(
            limit_n=limit_n, limit_dim=limit_dim, limit_monomials=limit_monomials
        )
        return overridden

    def json(self, by_alias: bool = False, **kwargs) -> str:
        """Serialization method for core object model."""
        total = {"profile": self.profile}
        for k in ("limits", "sampling", "output"):
            total[k] = getattr(self, k).as_serializable(by_alias=by_alias)
        return json.dumps(obj=total, default=pydantic_encoder, **kwargs)

    def __str__(self):
        return f"marginal.Configuration(profile='{self.profile}')"

    def __repr__(self):
        return f"marginal.Configuration(profile='{self.profile}')"
