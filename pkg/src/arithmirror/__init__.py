"""Point counts, Gauss-sum formulas, Picard-Fuchs operators and zeta functions
for Dwork-type hypersurface families and their mirrors."""

__version__ = "0.1.0"
