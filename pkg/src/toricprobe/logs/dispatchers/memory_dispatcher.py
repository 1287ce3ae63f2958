"""
A dispatcher that keeps the messages in memory, so that tests can look at what was logged.
"""
from typing import List

from toricprobe.logs.dispatchers.base_dispatcher import BaseDispatcher
from toricprobe.logs.message import Message


class MemoryDispatcher(BaseDispatcher):
    """
    Stores every message object, and its rendering, up to max_messages (oldest dropped first).
    """

    """
    How many messages we keep.
    """
    max_messages: int = 10000

    def __init__(self):
        self.messages: List[Message] = []
        self.rendered: List[str] = []

    def config_dispatcher(self, config: dict):
        super().config_dispatcher(config)
        self.max_messages = int(config.get('max_messages', 10000))

    def write_message(self, message_object: Message) -> bool:
        self.messages.append(message_object)
        self.rendered.append(self.format_message(message_object))
        if len(self.messages) > self.max_messages:
            del self.messages[0]
            del self.rendered[0]
        return True

    def find(self, message_static: str) -> List[Message]:
        """
        :param message_static: The static message to look for.
        :return: Every stored message with exactly that static part.
        """
        return [m for m in self.messages if m.message_static == message_static]

    def clear(self):
        self.messages.clear()
        self.rendered.clear()
