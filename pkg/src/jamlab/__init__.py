"""jamlab: toy symbolic-music generative models behind a minimal web demo server."""

__version__ = "0.1.0"
