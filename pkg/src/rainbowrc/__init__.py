"""Rainbow connection colorings: constructive bounds, verification, exact search."""
