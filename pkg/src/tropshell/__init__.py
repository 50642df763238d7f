"""Regular subdivisions, tight spans, tropical covector decompositions, shellings and discrete Morse certificates in exact arithmetic."""
