"""cogkernel: typed metagraphs, truth values, compositional simplicity,
stagewise decision processes and intelligence estimators."""

__version__ = "0.1.0"
