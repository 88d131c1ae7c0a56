"""Open bisimulation for the pi-calculus with distinguishing formulae."""
