from .main import build_parser, dispatch, main
