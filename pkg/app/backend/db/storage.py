"""CSV-backed storage of result tables, keyed by table name inside an output directory."""

import logging
import os

import numpy as np
import pandas as pd

from errors import ValidationError

logger = logging.getLogger(__name__)


class TableStorage:
    """Reads and writes named tables (CSV), text files and arrays under one directory."""

    def __init__(self, root: str):
        self._root = root

    @property
    def root(self) -> str:
        return self._root

    def path(self, name: str) -> str:
        return os.path.join(self._root, name)

    def _ensure_root(self) -> None:
        os.makedirs(self._root, exist_ok=True)

    def load(self, name: str) -> pd.DataFrame:
        path = name if os.path.isabs(name) or os.path.exists(name) else self.path(name)
        if not os.path.exists(path):
            raise ValidationError(f"table {path} does not exist")
        return pd.read_csv(path, float_precision="round_trip")

    def save(self, name: str, table) -> str:
        """Writes a DataFrame or a list of row dicts; floats keep their shortest round-trip form."""
        frame = table if isinstance(table, pd.DataFrame) else pd.DataFrame(list(table))
        self._ensure_root()
        path = self.path(name)
        frame.to_csv(path, index=False, lineterminator="\n")
        logger.info("Wrote %s (%d rows)", path, len(frame))
        return path

    def save_text(self, name: str, text: str) -> str:
        self._ensure_root()
        path = self.path(name)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info("Wrote %s", path)
        return path

    def save_array(self, name: str, array) -> str:
        self._ensure_root()
        path = self.path(name)
        np.save(path, np.asarray(array))
        logger.info("Wrote %s", path)
        return path

    def load_array(self, name: str) -> np.ndarray:
        path = name if os.path.exists(name) else self.path(name)
        if not os.path.exists(path):
            raise ValidationError(f"array file {path} does not exist")
        return np.load(path)
