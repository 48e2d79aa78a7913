from .main import main, build_parser, load_config

__all__ = ["main", "build_parser", "load_config"]
