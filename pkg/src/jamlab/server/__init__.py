from .app import DemoConfig, create_app

__all__ = ["DemoConfig", "create_app"]
