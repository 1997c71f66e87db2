"""HTTP service wrapping the library; the CLI reuses its handlers."""

from . import handlers, schemas

__all__ = ["handlers", "schemas"]
