"""
Wraps a message being logged, so that the dispatchers get every field in one object.
"""
from typing import Optional, Union

from toricprobe.logs.log_levels import LogLevel


class Message:
    """
    A single log event.
    """
    level: LogLevel
    source: Union[str, object]
    message_static: str
    params: dict
    ex: Optional[BaseException]
    instance_id: str
    machine_name: str

    def __init__(self, level: LogLevel, source: Union[str, object], message_static: str,
                 params: Optional[dict] = None, ex: Optional[BaseException] = None,
                 instance_id: str = "UNKNOWN", machine_name: str = "Unknown"):
        self.level = level
        self.source = source
        self.message_static = message_static
        self.params = dict(params) if params else {}
        self.ex = ex
        self.instance_id = instance_id
        self.machine_name = machine_name

    @property
    def source_name(self) -> str:
        """
        The module name when a string was passed as the source, otherwise the class name of the instance.
        """
        if isinstance(self.source, str):
            return self.source
        return type(self.source).__name__

    def __str__(self):
        return f"{self.level} - {self.source_name} - {self.message_static}"
