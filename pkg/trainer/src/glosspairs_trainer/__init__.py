"""Binary sequence-pair classifier training on tagged context-gloss pairs."""

__version__ = "0.1.0"
