from enum import Enum


class Command(Enum):
    chi = "chi"
    verify_theorem = "verify-theorem"
    verify_theorem2 = "verify-theorem2"
    verify_decomposition = "verify-decomposition"
    additivity = "additivity"
    sweep = "sweep"
    check_channel = "check-channel"

    def __str__(self):
        return self.value

    @staticmethod
    def all():
        return [c.value for c in Command]

    @staticmethod
    def sweepable():
        return [
            Command.chi.value,
            Command.verify_decomposition.value,
            Command.verify_theorem.value,
            Command.additivity.value,
        ]


class ChannelName(Enum):
    weyl = "weyl"
    depolarizing = "depolarizing"
    qc = "qc"
    phase_damping = "phase-damping"
    identity = "identity"

    def __str__(self):
        return self.value

    @staticmethod
    def all():
        return [c.value for c in ChannelName]


class PsiName(Enum):
    identity = "identity"
    depolarizing = "depolarizing"
    random = "random"
    phi = "phi"

    def __str__(self):
        return self.value

    @staticmethod
    def all():
        return [c.value for c in PsiName]
