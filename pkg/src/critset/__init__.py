"""Critical sets in Latin squares: construction, completion, census and bounds."""

from critset.model import (
    Entry,
    LatinSquare,
    PartialLatinSquare,
    Shape,
    SquareFormatError,
    is_contained_in,
    parse_square_text,
    serialize_square_text,
    shape_of,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Entry",
    "LatinSquare",
    "PartialLatinSquare",
    "Shape",
    "SquareFormatError",
    "is_contained_in",
    "parse_square_text",
    "serialize_square_text",
    "shape_of",
    "validate",
]
