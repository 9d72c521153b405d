"""
Monodromy words over the generators L and R
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..core.exceptions import EmptyWord, InvalidCharacter, NotHyperbolic

# object dtype keeps Python integers, long words overflow int64
GENERATORS = {
    'L': np.array([[1, 1], [0, 1]], dtype=object),
    'R': np.array([[1, 0], [1, 1]], dtype=object),
}
IDENTITY = np.array([[1, 0], [0, 1]], dtype=object)


@dataclass(frozen=True)
class MonodromyWord:
    """
    Cyclic L/R word stored in its lexicographically least rotation

    A canonical word always starts with L and ends with R, so its
    letter runs never wrap around the end of the tuple.
    """
    letters: Tuple[str, ...]

    @property
    def period(self) -> int:
        return len(self.letters)

    @property
    def text(self) -> str:
        return ''.join(self.letters)

    def letter(self, index: int) -> str:
        """Letter at a stack index, read cyclically"""
        return self.letters[index % self.period]

    def runs(self) -> List[Tuple[str, int, int]]:
        """
        Maximal letter runs

        Returns:
            List of (letter, start index, length) in word order
        """
        runs = []
        start = 0
        for i in range(1, self.period + 1):
            if i == self.period or self.letters[i] != self.letters[start]:
                runs.append((self.letters[start], start, i - start))
                start = i
        return runs

    def primitive_period(self) -> int:
        """Smallest p with the word equal to its own rotation by p"""
        for p in range(1, self.period + 1):
            if self.period % p == 0 and self.letters == self.letters[p:] + self.letters[:p]:
                return p
        return self.period

    def __str__(self) -> str:
        return self.text


def canonical_rotation(letters: Tuple[str, ...]) -> Tuple[str, ...]:
    """Lexicographically least cyclic rotation"""
    rotations = [letters[i:] + letters[:i] for i in range(len(letters))]
    return min(rotations)


def parse_word(text: str) -> MonodromyWord:
    """
    Parse a monodromy word

    Args:
        text: Letters L and R, case-insensitive; whitespace is ignored

    Returns:
        Canonical MonodromyWord

    Raises:
        EmptyWord: No letters given
        InvalidCharacter: Anything other than L or R
        NotHyperbolic: Only one of the two letters occurs
    """
    cleaned = ''.join((text or '').split()).upper()
    if not cleaned:
        raise EmptyWord("Monodromy word is empty")

    bad = sorted(set(cleaned) - set(GENERATORS))
    if bad:
        raise InvalidCharacter(f"Invalid characters in monodromy word: {''.join(bad)}")

    if len(set(cleaned)) < 2:
        trace = int(np.trace(_product(cleaned)))
        raise NotHyperbolic(
            f"Word {cleaned} uses a single generator (trace {trace}); "
            "monodromy must contain both L and R"
        )

    return MonodromyWord(canonical_rotation(tuple(cleaned)))


def _product(letters) -> np.ndarray:
    matrix = IDENTITY.copy()
    for letter in letters:
        matrix = matrix @ GENERATORS[letter]
    return matrix


def monodromy_matrix(word) -> np.ndarray:
    """
    Product of generator matrices in word order

    Args:
        word: MonodromyWord or a raw letter string (the raw form skips
            the hyperbolicity check so single generators can be inspected)

    Returns:
        2x2 integer matrix acting on column vectors (q, p)
    """
    letters = word.letters if isinstance(word, MonodromyWord) else str(word).upper()
    return _product(letters)
