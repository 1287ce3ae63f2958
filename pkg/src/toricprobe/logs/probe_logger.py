"""
The logger used by every toricprobe module.  It broadcasts each message to the dispatchers listed in the
configuration, after filtering on the configured default level.
"""
import datetime
import importlib
import random
import socket
import threading
from typing import Dict, Optional, Union

from toricprobe.config import ProbeConfig, get_config
from toricprobe.exceptions import ConfigError
from toricprobe.logs.dispatchers.base_dispatcher import BaseDispatcher
from toricprobe.logs.log_levels import LogLevel, LogLevels
from toricprobe.logs.message import Message


class ProbeLogger:
    """
    Sets up the dispatchers named in the configuration and broadcasts log messages to them.
    """

    """
    The dict of dispatcher names to dispatcher instances.
    """
    dispatchers: Dict[str, BaseDispatcher]

    """
    A unique code for each instance of the logger, from the start time and a random suffix.
    """
    instance_id: str = "UNKNOWN"

    """
    The current hostname for this machine.
    """
    machine_name: str = "Unknown"

    """
    Messages below this level are dropped.
    """
    default_log_level: LogLevel = LogLevels.WARNING

    def __init__(self, config: Optional[ProbeConfig] = None):
        """
        :param config: The configuration to read the dispatchers from.  Defaults to the process wide one.
        """
        self.config = config or get_config()
        self.machine_name = socket.gethostname()
        self.instance_id = self._generate_instance_id()
        self._output_mutex = threading.Lock()

        level_name = self.config.get('log_levels', 'default_log_level', 'warning')
        level = LogLevels.get_level_by_name(level_name)
        if level is None:
            raise ConfigError(f"Unknown default_log_level '{level_name}' in the configuration.")
        self.default_log_level = level

        self._init_dispatchers()
        self.debug(self, "Logger Initialized", {
            "machine_name": self.machine_name,
            "config_path": self.config.path,
        })

    def _init_dispatchers(self):
        """
        Go through the list of dispatchers configured, and instantiate them all.
        """
        self.dispatchers = {}
        for dispatcher_name in self.config.get('common', 'dispatchers', []):
            dispatcher_config = self.config.section(dispatcher_name)
            if not dispatcher_config:
                raise ConfigError(f"Could not find dispatcher {dispatcher_name} configuration "
                                  f"in config file {self.config.path}")

            dispatcher_cls_name = dispatcher_config.get('dispatcher_class_name')
            if not dispatcher_cls_name:
                raise ConfigError(f'Dispatcher {dispatcher_name} does not have a class name entry in config '
                                  f'(dispatcher_class_name)')

            module_name, class_name = dispatcher_cls_name.rsplit(".", 1)
            dispatcher_cls = getattr(importlib.import_module(module_name), class_name)
            dispatcher_instance: BaseDispatcher = dispatcher_cls()
            dispatcher_instance.config_dispatcher(config=dispatcher_config)
            self.dispatchers[dispatcher_name] = dispatcher_instance

    def is_enabled(self, log_level: LogLevel) -> bool:
        """
        :return: True when a message at log_level would be dispatched.  Check it before building expensive params.
        """
        return self.default_log_level <= log_level

    def log_internal(self, log_level: LogLevel, log_source: Union[str, object], log_message_static: str,
                     log_params: Optional[dict] = None, exception: Optional[BaseException] = None) -> None:
        """
        Logs something at the given level.  Ordinarily, you should be using the level methods.
        :param log_level: The logging level that we are dispatching this message.
        :param log_source: Pass 'self' if you are in a class, or __name__ if you are in a python module.
        :param log_message_static: The static part of the log, like 'Built layer poset'.  Things that never
        change go in here, so that downstream systems can group all the events by it.
        :param log_params: The variable details, like {'layers': 5, 'covers': 7}.
        :param exception: The exception that we are logging, its stack trace is added to the message.
        """
        if log_params is not None and not isinstance(log_params, dict):
            raise ValueError(f"Message log params for message '{log_message_static}' from "
                             f"{log_source} is not a dictionary!  Pass in a dictionary or None.")
        if not self.is_enabled(log_level):
            return

        msg_obj = Message(level=log_level, source=log_source, message_static=log_message_static,
                          params=log_params, ex=exception, instance_id=self.instance_id,
                          machine_name=self.machine_name)
        with self._output_mutex:
            for disp in self.dispatchers.values():
                disp.write_message(message_object=msg_obj)

    def _generate_instance_id(self) -> str:
        """
        :return: A unique instance id made of the UTC start time and five hex digits.
        """
        cur_date = datetime.datetime.now(datetime.timezone.utc).strftime('%Y%m%d_%H%M%SZ')
        suffix = ''.join(random.choice('0123456789ABCDEF') for _ in range(5))
        return cur_date + "_" + suffix

    def trace(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
              exception: Optional[BaseException] = None) -> None:
        """
        Logs at TRACE, the lowest level, for step by step tracing of an operation.  This level affects performance.
        """
        self.log_internal(LogLevels.TRACE, log_source, log_message_static, log_params, exception)

    def debug(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
              exception: Optional[BaseException] = None) -> None:
        """
        Logs at DEBUG: what a developer needs while debugging, like the size of a graded piece.
        """
        self.log_internal(LogLevels.DEBUG, log_source, log_message_static, log_params, exception)

    def info(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
             exception: Optional[BaseException] = None) -> None:
        """
        Logs at INFO: an event, like "Command finished", {"command": "betti", "elapsed_s": 0.02}
        """
        self.log_internal(LogLevels.INFO, log_source, log_message_static, log_params, exception)

    def notice(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
               exception: Optional[BaseException] = None) -> None:
        """
        Logs at NOTICE: an INFO you want to highlight.
        """
        self.log_internal(LogLevels.NOTICE, log_source, log_message_static, log_params, exception)

    def warning(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
                exception: Optional[BaseException] = None) -> None:
        """
        Logs at WARNING: a recoverable problem, the execution continues.
        """
        self.log_internal(LogLevels.WARNING, log_source, log_message_static, log_params, exception)

    def warn(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
             exception: Optional[BaseException] = None) -> None:
        """
        Shortcut for warning().
        """
        self.log_internal(LogLevels.WARNING, log_source, log_message_static, log_params, exception)

    def error(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
              exception: Optional[BaseException] = None) -> None:
        """
        Logs at ERROR: a failed check or a rejected input.  Consider passing the exception.
        """
        self.log_internal(LogLevels.ERROR, log_source, log_message_static, log_params, exception)

    def critical(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
                 exception: Optional[BaseException] = None) -> None:
        self.log_internal(LogLevels.CRITICAL, log_source, log_message_static, log_params, exception)

    def fatal(self, log_source: Union[str, object], log_message_static: str, log_params: Optional[dict] = None,
              exception: Optional[BaseException] = None) -> None:
        self.log_internal(LogLevels.FATAL, log_source, log_message_static, log_params, exception)


"""
Global logger so we only keep one instance in the process.
"""
_GLOBAL_LOGGER: Optional[ProbeLogger] = None


def get_logger() -> ProbeLogger:
    """
    Gets the process wide logger, creating it from the active configuration on first use.
    :return: An instance of the probe logger which is global to the entire python process.
    """
    global _GLOBAL_LOGGER
    if _GLOBAL_LOGGER:
        return _GLOBAL_LOGGER

    _GLOBAL_LOGGER = ProbeLogger()
    return _GLOBAL_LOGGER


def reset_logger():
    """
    Drops the global logger; the next get_logger() builds a new one from the then active configuration.
    """
    global _GLOBAL_LOGGER
    _GLOBAL_LOGGER = None
