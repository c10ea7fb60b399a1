"""immersion-kit: immersions, edge-cut decompositions and branch-width of multigraphs."""
