"""Mixed Tate motives over a number field: bar constructions,
polylogarithm comodules, cycle faces, chains and their Hodge realization."""

__version__ = "0.1.0"
