"""logdup: find duplicate logging statements and their code smells in Java."""

__version__ = "0.1.0"
