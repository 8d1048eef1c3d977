"""klift: lifting graded modules along Koszul quotients."""

__version__ = "0.1.0"
