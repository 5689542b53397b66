"""ordertopo - executable order topology on finite structures."""

__version__ = "0.1.0"
