"""Decision procedures, countermodels and interpolants for the Rosser
provability logics GR-, GR-circ and GR and their fragments GL, N and NR."""
from .syntax import parse, render, Formula

__version__ = "0.1.0"
