"""Grammar-level Java source analysis: tokenizer and structural parser.

No classpath or type resolution happens here; everything is derived from a
single file's token stream. That keeps scanning independent of build systems
while still recovering the structure the detectors need: type declarations,
inheritance clauses, method signatures, nested statement blocks, string
constants, and method invocations.
"""

from logdup.javasrc.lexer import Token, tokenize
from logdup.javasrc.parser import Invocation, ParsedUnit, parse_java

__all__ = ["Token", "tokenize", "Invocation", "ParsedUnit", "parse_java"]
