"""
Structured logging for toricprobe.  Every message has a static part, which never changes and can be grouped on,
and a dictionary of parameters holding the sizes and identifiers of the computation that produced it.
"""
from toricprobe.logs.probe_logger import ProbeLogger, get_logger, reset_logger

__all__ = ["ProbeLogger", "get_logger", "reset_logger"]
