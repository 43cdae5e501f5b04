"""Static figure scripts for the lsqbounds CSV artifacts."""

from .io import FigureInputError, load_csv
from .render import FIGURE_IDS, FigureSpec, render

__version__ = "0.1.0"
