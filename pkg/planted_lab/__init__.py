__version__ = "0.1.0"

from planted_lab.main import main  # noqa: E402

__all__ = ["__version__", "main"]
