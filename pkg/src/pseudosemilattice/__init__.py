"""Bipartite-graph model of the free pseudosemilattice."""
