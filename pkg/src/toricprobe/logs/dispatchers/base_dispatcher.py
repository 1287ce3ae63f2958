"""
The base class of every dispatcher, with the rune based message formatting they share.
"""
import datetime
import traceback
from abc import ABC, abstractmethod
from fractions import Fraction

from toricprobe.logs.message import Message

"""
The message format used when the config section does not give one.
"""
DEFAULT_MESSAGE_FORMAT = 'date="[[DATE_STRING]]" level="[[LOG_LEVEL]]" source="[[CLASS_NAME]]" ' \
                         'message="[[LOG_MESSAGE_STATIC]]" [[LOG_PARAMS]]'

DEFAULT_EXCEPTION_FORMAT = ' exception="\n[[EXCEPTION_TEXT]]"'

DEFAULT_DATETIME_FORMAT = '%Y-%m-%d_%H:%M:%S.%f'


def render_param(param_val) -> str:
    """
    Renders a single log parameter.  Numbers are written bare, exact rationals as p/q, sequences and dicts
    recursively, everything else quoted through str().
    :param param_val: The value passed in the params dictionary.
    :return: The rendered value.
    """
    if isinstance(param_val, bool):
        return str(param_val).lower()
    if isinstance(param_val, (int, float)):
        return str(param_val)
    if isinstance(param_val, Fraction):
        return str(param_val)
    if isinstance(param_val, datetime.datetime):
        return f'"{param_val.isoformat()}"'
    if isinstance(param_val, (list, tuple)):
        return '[' + ','.join(render_param(v) for v in param_val) + ']'
    if isinstance(param_val, dict):
        return '{' + ','.join(f'{k}:{render_param(v)}' for k, v in param_val.items()) + '}'
    return f'"{str(param_val)}"'


class BaseDispatcher(ABC):
    """
    A base dispatcher, providing the methods that you have to overload.
    """

    """
    strftime format of [[DATE_STRING]].
    """
    datetime_format: str = DEFAULT_DATETIME_FORMAT

    """
    Log the date in UTC rather than the local time zone.
    """
    log_utc_timezone: bool = True

    """
    The message template, see format_message for the runes.
    """
    message_format: str = DEFAULT_MESSAGE_FORMAT

    """
    Appended to message_format when an exception is attached to the message.
    """
    exception_format: str = DEFAULT_EXCEPTION_FORMAT

    def config_dispatcher(self, config: dict):
        """
        We pass in the section of the dispatcher from the toml config file.  Subclasses that read more keys
        call this first.
        :param config: The configuration section for this dispatcher.
        """
        self.datetime_format = config.get('datetime_format', DEFAULT_DATETIME_FORMAT)
        self.log_utc_timezone = bool(config.get('log_utc_timezone', True))
        self.message_format = config.get('message_format', DEFAULT_MESSAGE_FORMAT)
        self.exception_format = config.get('exception_format', DEFAULT_EXCEPTION_FORMAT)

    @abstractmethod
    def write_message(self, message_object: Message) -> bool:
        """
        Writes a message to whatever resource this dispatcher writes to.
        :param message_object: The log message values we need to write.  For a standard render,
        call format_message.
        :return: True if the message was written.
        """

    def format_message(self, message_object: Message) -> str:
        """
        Replaces the runes of the configured message format:
        [[INSTANCE_ID]] unique id of the logger instance.
        [[MACHINE_NAME]] host name of the machine.
        [[DATE_STRING]] the date, formatted with datetime_format.
        [[LOG_LEVEL]] the level name.
        [[CLASS_NAME]] the class (or module) that logged.
        [[LOG_MESSAGE_STATIC]] the static part of the message.
        [[LOG_PARAMS]] the parameters as key=value pairs.
        [[EXCEPTION_TEXT]] the stack trace, only when an exception was passed.
        :param message_object: The values for all the fields we want to output.
        :return: The rendered message.
        """
        msg = self.message_format

        ex = message_object.ex
        if ex:
            msg += self.exception_format
            ex_text = ''.join(traceback.format_exception(type(ex), ex, ex.__traceback__))
            msg = msg.replace('[[EXCEPTION_TEXT]]', ex_text)

        if not self.datetime_format:
            raise ValueError("No valid datetime_format configured for the dispatcher.  Was empty.")
        log_date = datetime.datetime.now(datetime.timezone.utc) if self.log_utc_timezone \
            else datetime.datetime.now()

        msg = msg.replace('[[CLASS_NAME]]', message_object.source_name)
        msg = msg.replace('[[DATE_STRING]]', log_date.strftime(self.datetime_format))
        msg = msg.replace('[[LOG_LEVEL]]', message_object.level.name)
        msg = msg.replace('[[LOG_MESSAGE_STATIC]]', message_object.message_static)
        msg = msg.replace('[[INSTANCE_ID]]', message_object.instance_id)
        msg = msg.replace('[[MACHINE_NAME]]', message_object.machine_name)

        params_msg = ' '.join(f'{key}={render_param(val)}' for key, val in message_object.params.items())
        return msg.replace('[[LOG_PARAMS]]', params_msg).strip()
