from .logging import configure_logging, logging_to_stderr

__all__ = ['configure_logging', 'logging_to_stderr']
