from __future__ import annotations

from ..config import DOMPConfig


class _Service:
    def __init__(self, cfg: DOMPConfig) -> None:
        self.cfg = cfg
