"""supermagic - exact GF(p) engine for the Supermagic Square and its Jordan superalgebras."""

__version__ = "0.1.0"
__all__ = ["__version__"]
