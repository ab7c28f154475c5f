"""docsim: podobnost dokumentů (tf-idf, ED / CS / TS-SS) a CBR klasifikace."""

__version__ = "1.0.0"
