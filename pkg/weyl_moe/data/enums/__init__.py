from .command import Command, ChannelName, PsiName
from .logbase import LogBase
from .reportformat import ReportFormat
from .variant import Variant
