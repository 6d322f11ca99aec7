"""State-vector VQE for the kagome Heisenberg antiferromagnet."""

__version__ = "0.1.0"
