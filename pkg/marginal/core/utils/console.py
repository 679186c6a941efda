"""
Base class for all module-level Stdout objects.
"""
from __future__ import annotations

import sys
from typing import Optional, TextIO


class Console:
    """
    Base class for console output containers.
    """

    def __init__(self, silence: bool = False, stream: Optional[TextIO] = None):
        self.silence = silence
        self.stream = stream

    def p(self, text: str):
        """Conditional print"""
        if not self.silence:
            print(text, file=self.stream or sys.stdout)
