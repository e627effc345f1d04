"""Generalized splines on graphs and graphic multi-arrangements."""
