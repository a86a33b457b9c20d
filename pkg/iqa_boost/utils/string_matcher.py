"""
String matching utilities for "did you mean" hints on unknown identifiers.
"""

import re
from typing import Iterable

from fuzzywuzzy import fuzz, process


class StringMatcher:
    """Utility class for string matching."""

    # Minimum similarity (0-100) for a candidate to be offered as a hint
    SUGGESTION_THRESHOLD = 60

    @staticmethod
    def normalize_string(s: str) -> str:
        """
        Normalize a string for comparison.

        Converts to lowercase, removes extra whitespace and punctuation.

        Args:
            s: The string to normalize

        Returns:
            Normalized string
        """
        if not s:
            return ""

        s = s.lower()
        s = re.sub(r"[,.\-_/\\]", " ", s)
        return " ".join(s.split())

    @staticmethod
    def closest(candidate: str, choices: Iterable[str]) -> str:
        """
        Best-matching choice for a mistyped identifier, or "" when nothing is close.

        Args:
            candidate: The unknown identifier (e.g. "blurr")
            choices: Known identifiers

        Returns:
            The closest known identifier, or "" below SUGGESTION_THRESHOLD
        """
        choices = list(choices)
        if not candidate or not choices:
            return ""
        best = process.extractOne(
            candidate,
            choices,
            processor=StringMatcher.normalize_string,
            scorer=fuzz.ratio,
        )
        if best is None or best[1] < StringMatcher.SUGGESTION_THRESHOLD:
            return ""
        return best[0]
