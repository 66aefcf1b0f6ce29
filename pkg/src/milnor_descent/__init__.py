"""Exact models of cohesive modules over curved dgas and Milnor descent."""

__version__ = "0.1.0"
