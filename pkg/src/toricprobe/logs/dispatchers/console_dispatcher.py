"""
A dispatcher that writes log messages to STDERR, keeping STDOUT free for command output.
"""
import sys

from toricprobe.logs.dispatchers.base_dispatcher import BaseDispatcher
from toricprobe.logs.log_levels import LogLevels
from toricprobe.logs.message import Message


class ConsoleDispatcher(BaseDispatcher):
    """
    Writes to the console, colouring the message by level.
    """

    """
    The ANSI colour codes we use.
    """
    ascii_colour_codes = {
        'red': '\033[0;31m',
        'yellow': '\033[0;33m',
        'light-gray': '\033[0;37m',
        'light-red': '\033[1;31m',
        'light-green': '\033[1;32m',
        'light-blue': '\033[1;34m',
        'light-magenta': '\033[1;35m',
        'light-cyan': '\033[1;36m',
        'reset': "\033[0m"
    }

    """
    The mapping of log levels to colour codes.
    """
    color_mappings = {
        LogLevels.TRACE: ascii_colour_codes['light-gray'],
        LogLevels.DEBUG: ascii_colour_codes['light-green'],
        LogLevels.INFO: ascii_colour_codes['light-blue'],
        LogLevels.NOTICE: ascii_colour_codes['light-cyan'],
        LogLevels.WARNING: ascii_colour_codes['yellow'],
        LogLevels.ERROR: ascii_colour_codes['light-red'],
        LogLevels.CRITICAL: ascii_colour_codes['light-magenta'],
        LogLevels.FATAL: ascii_colour_codes['red'],
    }

    """
    Colour the messages.  Only applied when stderr is a terminal.
    """
    colorize_messages: bool = True

    def config_dispatcher(self, config: dict):
        super().config_dispatcher(config)
        self.colorize_messages = bool(config.get('colorize_messages', True))

    def write_message(self, message_object: Message) -> bool:
        message = self.format_message(message_object)
        stream = sys.stderr
        if self.colorize_messages and stream.isatty() and message_object.level in self.color_mappings:
            message = f"{self.color_mappings[message_object.level]}{message}{self.ascii_colour_codes['reset']}"
        print(message, file=stream, flush=True)
        return True
