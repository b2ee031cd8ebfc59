#--------------------------------------------------------------------------------------------------#
# errors.py                                                                                        #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Exception types raised by the xube library                                                       #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.19: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#


class XubeError(Exception):
    """Base class of every error raised on purpose by xube."""


class ConfigError(XubeError, ValueError):
    """Invalid parameter, missing domain capability or inconsistent settings."""


class AlgoSpecError(ConfigError):
    """Malformed algorithm-spec string. ``token`` holds the offending piece."""

    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


class InvalidActionError(XubeError, ValueError):
    """Action is not applicable in the given state."""


class DeadEndError(XubeError):
    """State has no applicable action."""


class CodecError(XubeError, ValueError):
    """Text or file encoding of states, goals, actions or instances failed."""


class CheckpointError(XubeError):
    pass


class CorruptCheckpointError(CheckpointError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


class SearchInternalError(XubeError, RuntimeError):
    """Broken search-tree record (e.g. a cycle)."""


class ReplayError(XubeError, RuntimeError):
    """A reported path does not replay to its goal or cost."""
