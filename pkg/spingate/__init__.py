"""
spingate - classical-spin Toffoli gate engine and workbench.

Simulates a target spin driven by two frozen control spins under
Landau-Lifshitz-Gilbert dynamics, designs gate parameters that make the
target flip only when both controls are 1, and verifies the resulting
truth table.
"""

__version__ = "1.0.0"
__author__ = "spingate Contributors"
