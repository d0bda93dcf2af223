"""
Base mapper class for all record transformation functions.
"""
from abc import ABC


class BaseMapper(ABC):
    """
    Base class for data mappers.

    Mappers turn in-memory results (trace records, fits, resolved configs)
    into flat dictionaries for the CSV and manifest artifacts. Each mapper
    defines its own map() signature based on its needs.
    """
    pass
