"""A first-order term-rewriting kernel with checked meta-extract facts."""

from .core import App, Quote, Symbol, Var, parse, show
from .eval import KERNEL, evaluate, sublis_var
from .world import EMPTY_WORLD, World

__version__ = "0.1.0"

__all__ = ["App", "Quote", "Symbol", "Var", "parse", "show", "KERNEL", "evaluate",
           "sublis_var", "EMPTY_WORLD", "World", "__version__"]
