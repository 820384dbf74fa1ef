"""Homotopy of nanowords and nanophrases and their finite type invariants."""
