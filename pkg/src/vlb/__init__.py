"""Lower-bound constructions for Voronoi diagrams of lines and flats, with exact certificate checking."""

__version__ = "0.1.0"
