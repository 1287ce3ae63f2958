"""
The log levels understood by the probe logger, and a helper to look them up by name or id.
A message is dispatched only when its level is at or above the configured default level.
"""
from typing import Optional


class LogLevel:
    """
    A single log level: a name and an integer id.  Higher ids are more severe.
    """
    name: str
    level_id: int

    def __init__(self, name: str, level_id: int):
        """
        :param name: The name of the log level, like 'WARNING'.
        :param level_id: An integer id for the log level, ex: 4
        """
        self.name = name
        self.level_id = level_id

    def __eq__(self, other):
        if not isinstance(other, LogLevel):
            return NotImplemented
        return self.level_id == other.level_id

    def __lt__(self, other):
        if not isinstance(other, LogLevel):
            return NotImplemented
        return self.level_id < other.level_id

    def __le__(self, other):
        if not isinstance(other, LogLevel):
            return NotImplemented
        return self.level_id <= other.level_id

    def __str__(self):
        """
        :return: The name and the id, for example "WARNING(4)"
        """
        return f"{self.name}({self.level_id})"

    def __hash__(self):
        return hash(self.level_id)


class LogLevels:
    """
    All the log levels supported by the probe logger.

    Dev note: It's just easier doing it this way than dealing with the odd Enum type in python.
    """

    """
    Step by step tracing, like every row operation of a reduction.  Slow, use sparingly.
    """
    TRACE = LogLevel('TRACE', 0)

    """
    What a developer needs while debugging a computation: sizes of posets, graded pieces, relation counts.
    """
    DEBUG = LogLevel('DEBUG', 1)

    """
    Something happened, like a command starting or finishing.
    """
    INFO = LogLevel('INFO', 2)

    """
    An INFO that deserves attention, like a conjecture probe reporting a mismatch.
    """
    NOTICE = LogLevel('NOTICE', 3)

    """
    A recoverable problem: the computation continues, but the result needs a second look.
    """
    WARNING = LogLevel('WARNING', 4)
    WARN = WARNING

    """
    A failed check or a rejected input.
    """
    ERROR = LogLevel('ERROR', 5)

    """
    Something is inconsistent in a way that invalidates the results of the run.
    """
    CRITICAL = LogLevel('CRITICAL', 6)

    """
    The process cannot continue.
    """
    FATAL = LogLevel('FATAL', 7)

    """
    A map of integer values to log levels.
    """
    log_levels_by_id = {level.level_id: level for level in
                        (TRACE, DEBUG, INFO, NOTICE, WARNING, ERROR, CRITICAL, FATAL)}

    """
    A map of uppercase names to log levels, 'WARN' being an alias of 'WARNING'.
    """
    log_levels_by_name = {
        'TRACE': TRACE,
        'DEBUG': DEBUG,
        'INFO': INFO,
        'NOTICE': NOTICE,
        'WARNING': WARNING,
        'WARN': WARNING,
        'ERROR': ERROR,
        'CRITICAL': CRITICAL,
        'FATAL': FATAL,
    }

    @classmethod
    def get_level_by_name(cls, str_name: Optional[str]) -> Optional[LogLevel]:
        """
        Pass in a level name, like 'eRRor', or 'Error' and it will return the actual log level
        for that string.  If we can't find it, we return None.
        :param str_name: The level name that you are looking for.
        :return: The LogLevel instance, or None if not found.
        """
        if not str_name:
            return None
        return cls.log_levels_by_name.get(str_name.strip().upper())

    @classmethod
    def get_log_level_by_id(cls, level_id: Optional[int]) -> Optional[LogLevel]:
        """
        Gets a log level by its integer identifier.  Returns None if not found.
        :param level_id: The level int that you are looking for.
        :return: The LogLevel instance, or None if not found.
        """
        if level_id is None:
            return None
        return cls.log_levels_by_id.get(level_id)
