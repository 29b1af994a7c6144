"""Twisted tensor products of k[x] and k[y] and their finite duals, in exact arithmetic."""
