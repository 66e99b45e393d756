"""Exact construction and census of noncommutative rank-6 reality-based algebras."""
from .spectrum import CharacterTable, ParameterSet, character_table, parse_params, validate
from .surd import Surd

__version__ = "0.1.0"

__all__ = ["Surd", "ParameterSet", "CharacterTable", "character_table", "parse_params", "validate"]
