"""Model checking for higher-order recursion schemes and friends.

Submodules: core (schemes and trees), games (parity games), automata
(alternating parity tree automata, word automata), epsilon (silent-move
tree automata), logic (fixpoint formulas and systems), typecheck
(intersection-type model checking), hopda (higher-order pushdown machinery),
resource (resource-usage programs), formats (text formats), randgen (seeded
instance generators), cli (command line).
"""

__version__ = "0.1.0"
