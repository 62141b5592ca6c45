"""Game-theoretic poker toolbench: solvers, equities, rewards, serving, matches."""

__version__ = "0.1.0"
