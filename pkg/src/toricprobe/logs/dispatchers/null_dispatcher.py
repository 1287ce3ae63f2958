"""
A log dispatcher that consumes logs and does nothing.
"""
from toricprobe.logs.dispatchers.base_dispatcher import BaseDispatcher
from toricprobe.logs.message import Message


class NullDispatcher(BaseDispatcher):
    """
    A log dispatcher that consumes logs and does nothing
    """

    def write_message(self, message_object: Message) -> bool:
        return False
