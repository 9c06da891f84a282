from enum import Enum, IntEnum


class ExitCode(IntEnum):
    """Коды выхода команд"""
    OK = 0
    VIOLATION = 1
    USAGE = 2


class OutputFormat(str, Enum):
    """Форматы отчётов sweep"""
    JSON = 'json'
    CSV = 'csv'
    BOTH = 'both'
