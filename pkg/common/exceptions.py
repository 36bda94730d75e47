# -*- coding: utf-8 -*-
"""Exceptions."""


class ImplementationError(Exception):
    """A general error for poor implementation. Usually used in registries and subclasses."""

    pass


class ConfigurationError(Exception):
    """The user has configured something incorrectly."""

    pass


class InputDomainError(ValueError):
    """An input falls outside the domain the operation accepts."""

    pass


class DivergenceError(Exception):
    """Training produced a non-finite loss."""

    def __init__(self, message, epoch):  # noqa: D107
        super().__init__(message)
        self.epoch = epoch


class MissingArtifactError(FileNotFoundError):
    """A pipeline step needs an artifact that an earlier step has not written."""

    pass
