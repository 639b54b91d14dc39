"""
Words in a named generating set.

Letters are integers: generator i is letter 2*i and its inverse is 2*i + 1,
so inverting a letter flips the lowest bit. Words are kept freely reduced.

Grammar of written words:

    word      := factor*                      juxtaposition, optional '*'
    factor    := atom ('^' exponent)*
    atom      := generator | '1' | '(' word ')' | '[' word (',' word)+ ']'
    exponent  := integer | '-' integer | '{' (integer | word) '}'
                 | generator | '(' word ')'

An integer exponent is a power, a word exponent conjugates: x^g = g^-1 x g.
Commutators are [x, y] = x^-1 y^-1 x y and left-normed: [x, y, z] = [[x, y], z].
Generator names are matched greedily, longest declared name first, so h_14 is
never read as h_1 followed by 4.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..core.errors import MissingAssignmentError, ParseError


def invert_letter(letter: int) -> int:
    return letter ^ 1


def reduce_letters(letters: Iterable[int]) -> Tuple[int, ...]:
    """Free reduction: cancel adjacent x x^-1 pairs."""
    stack: List[int] = []
    for letter in letters:
        if stack and stack[-1] == letter ^ 1:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over an alphabet of named generators."""

    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "Word":
        letter = 2 * index if exponent > 0 else 2 * index + 1
        return cls((letter,) * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(invert_letter(a) for a in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def conjugate(self, g: "Word") -> "Word":
        """self^g = g^-1 * self * g."""
        return g.inverse() * self * g

    def commutator(self, other: "Word") -> "Word":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return not self.letters

    def syllables(self) -> List[Tuple[int, int]]:
        """(generator index, exponent) runs, e.g. q q q^-1... never mixed signs."""
        runs: List[Tuple[int, int]] = []
        for letter in self.letters:
            gen, sign = letter >> 1, -1 if letter & 1 else 1
            if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (sign > 0):
                runs[-1] = (gen, runs[-1][1] + sign)
            else:
                runs.append((gen, sign))
        return runs

    def max_generator(self) -> int:
        return max((a >> 1 for a in self.letters), default=-1)


class Alphabet:
    """Generator names with greedy longest-match lookup."""

    def __init__(self, names: Sequence[str]):
        self.names = list(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Duplicate generator names: {self.names}")
        for name in self.names:
            if not name or name[0].isdigit() or not all(ch.isalnum() or ch == "_" for ch in name):
                raise ValueError(f"Invalid generator name: {name!r}")
        self.index: Dict[str, int] = {n: i for i, n in enumerate(self.names)}
        self._by_length = sorted(self.names, key=len, reverse=True)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def match(self, text: str, position: int):
        for name in self._by_length:
            if text.startswith(name, position):
                return name
        return None

    def parse(self, text: str, source: str = "") -> Word:
        return _Parser(text, self, source).parse()

    def format(self, word: Word) -> str:
        return format_word(word, self.names)


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, source: str):
        self.text = text
        self.alphabet = alphabet
        self.source = source
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(f"{message} in {self.text!r}", position=self.pos, source=self.source)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t*":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"Expected {ch!r}")
        self.pos += 1

    def parse(self) -> Word:
        word = self.word()
        if self.peek():
            raise self.error(f"Unexpected {self.peek()!r}")
        return word

    def word(self) -> Word:
        result = Word()
        while self.peek() and self.peek() not in ")],}=":
            result = result * self.factor()
        return result

    def factor(self) -> Word:
        base = self.atom()
        while self.peek() == "^":
            self.pos += 1
            base = self.exponent(base)
        return base

    def atom(self) -> Word:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.word()
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            parts = [self.word()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.word())
            self.expect("]")
            if len(parts) < 2:
                raise self.error("Commutator needs at least two entries")
            result = parts[0]
            for part in parts[1:]:
                result = result.commutator(part)
            return result
        if ch == "1" and not self.text[self.pos + 1:self.pos + 2].isdigit():
            self.pos += 1
            return Word()
        name = self.alphabet.match(self.text, self.pos)
        if name is None:
            raise self.error("Unknown generator")
        self.pos += len(name)
        return Word.generator(self.alphabet.index[name])

    def integer(self):
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            return None
        return int(self.text[start:self.pos])

    def exponent(self, base: Word) -> Word:
        ch = self.peek()
        if not ch:
            raise self.error("Missing exponent")
        if ch == "{":
            self.pos += 1
            start = self.pos
            n = self.integer()
            if n is not None and self.peek() == "}":
                self.pos += 1
                return base ** n
            self.pos = start
            conjugator = self.word()
            self.expect("}")
            return base.conjugate(conjugator)
        if ch in "+-" or ch.isdigit():
            n = self.integer()
            if n is None:
                raise self.error("Malformed exponent")
            return base ** n
        if ch == "(":
            self.pos += 1
            conjugator = self.word()
            self.expect(")")
            return base.conjugate(conjugator)
        name = self.alphabet.match(self.text, self.pos)
        if name is None:
            raise self.error("Malformed exponent")
        self.pos += len(name)
        return base.conjugate(Word.generator(self.alphabet.index[name]))


def parse_word(text: str, names: Sequence[str], source: str = "") -> Word:
    return Alphabet(names).parse(text, source)


def format_word(word: Word, names: Sequence[str]) -> str:
    """Space-separated syllables such as 'p q^2 v_1'; the identity prints as '1'."""
    if word.is_identity():
        return "1"
    parts = []
    for gen, exponent in word.syllables():
        parts.append(names[gen] if exponent == 1 else f"{names[gen]}^{exponent}")
    return " ".join(parts)


def evaluate(word: Word, assignment: Mapping[int, object], identity=None):
    """Product of the assigned elements along the word.

    assignment maps generator indices to group elements supporting '*',
    'inverse()' and integer powers (permutations and matrices both do).
    """
    needed = {gen for gen, _ in word.syllables()}
    missing = [g for g in needed if g not in assignment]
    if missing:
        raise MissingAssignmentError(f"No element assigned to generators {sorted(missing)}")
    if identity is None:
        if not assignment:
            raise MissingAssignmentError("Cannot form the identity of an empty assignment")
        sample = next(iter(assignment.values()))
        identity = sample * sample.inverse()
    result = identity
    for gen, exponent in word.syllables():
        result = result * (assignment[gen] ** exponent)
    return result
