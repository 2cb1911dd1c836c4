"""Growth, fitting and comparison of phoneme-language (consonant inventory) networks."""

__version__ = "0.1.0"
