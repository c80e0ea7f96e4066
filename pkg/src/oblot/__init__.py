"""Decision engine, planner and simulator for oblivious robots on graphs."""

__version__ = "0.1.0"
