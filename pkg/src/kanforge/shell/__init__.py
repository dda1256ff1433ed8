from kanforge.shell.document import SCHEMA, Document, DocumentError, parse, serialize
from kanforge.shell.cli import execute, main

__all__ = ["SCHEMA", "Document", "DocumentError", "execute", "main", "parse", "serialize"]
