"""Rideshare trip analytics and what-if weekly earnings planning.

Pipeline: ingest city and personal trip exports, classify coordinates into
neighborhoods, attach hourly weather, write a canonical store, build probe
payloads (hourly, calendar, map, animation, planner defaults), and serve
them alongside schedule simulation over a read-only HTTP API.
"""

__version__ = "0.1.0"
