"""Exact symbolic period calculus for critical twists of regular motives."""
