"""Card-based zero-knowledge proofs for the Five Cells and Meadows puzzles."""
from pathlib import Path

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"
