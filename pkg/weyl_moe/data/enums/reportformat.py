from enum import Enum


class ReportFormat(Enum):
    json = "json"
    csv = "csv"
    table = "table"

    def __str__(self):
        return self.value

    @staticmethod
    def all():
        return [f.value for f in ReportFormat]
