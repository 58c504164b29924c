from enum import Enum


class ChannelType(Enum):
    weyl = "weyl"
    kraus = "kraus"

    def __str__(self):
        return self.value

    @staticmethod
    def all():
        return [t.value for t in ChannelType]
