"""Adaptation-aware analysis of code examples.

Links examples to similar counterpart snippets, computes typed tree edit
scripts, classifies edits into a 24-type adaptation taxonomy, and lifts
interactive templates whose hot spots a human fills in.
"""

__version__ = "0.1.0"
