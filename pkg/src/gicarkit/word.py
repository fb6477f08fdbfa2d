"""Words in the annular GICAR category and their standard form.

Generators: ``a_i`` (create, level n -> n+1, 1 <= i <= n+1), ``s_i`` (annihilate,
written ``a*i``, n -> n-1, 1 <= i <= n) and ``t`` (rotate, n -> n).  A word is
kept in operator order: the rightmost letter acts first.  Text syntax::

    a3 a1 t^2 a*2 a*4 @5

Every word rewrites to a unique standard word
``a_{i_k} ... a_{i_1} t^r a*_{j_1} ... a*_{j_l}`` with increasing I and J and
``0 <= r < m - l``.  :func:`psi` sends words to annular diagrams: ``a_i`` leaves a
cup at outer point i, ``a*_i`` a cap at inner point i and ``t`` shifts every point
by one.  In a standard word J lists the caps, I the cups and r the offset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence, Union

from .diagram import AnnDiagram, RectDiagram, compose

__all__ = [
    "Letter",
    "MalformedWordError",
    "StandardWord",
    "Word",
    "compose_words",
    "enumerate_standard",
    "generator_diagram",
    "normalize",
    "parse_word",
    "psi",
    "psi_inverse",
    "tensor_words",
]

CREATE, ANNIHILATE, ROTATE = "a", "s", "t"


class MalformedWordError(ValueError):
    """Letter indices or levels do not chain."""


@dataclass(frozen=True)
class Letter:
    """One generator; ``index`` is the position for a/s and the power for t."""

    kind: str
    index: int

    def target(self, level: int) -> int:
        if self.kind == CREATE:
            if not 1 <= self.index <= level + 1:
                raise MalformedWordError(f"a{self.index} is not defined on [{level}]")
            return level + 1
        if self.kind == ANNIHILATE:
            if not 1 <= self.index <= level:
                raise MalformedWordError(f"a*{self.index} is not defined on [{level}]")
            return level - 1
        if self.kind == ROTATE:
            return level
        raise MalformedWordError(f"unknown generator kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == CREATE:
            return f"a{self.index}"
        if self.kind == ANNIHILATE:
            return f"a*{self.index}"
        return "t" if self.index == 1 else f"t^{self.index}"


@dataclass(frozen=True)
class Word:
    """Letters in operator order acting on the object of size ``source``."""

    source: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.source < 0:
            raise MalformedWordError("negative source size")
        self.levels()

    def levels(self) -> list[int]:
        """Source level of each letter."""
        out = [0] * len(self.letters)
        level = self.source
        for p in range(len(self.letters) - 1, -1, -1):
            out[p] = level
            level = self.letters[p].target(level)
        return out

    @property
    def target(self) -> int:
        level = self.source
        for letter in reversed(self.letters):
            level = letter.target(level)
        return level

    def is_rect(self) -> bool:
        return all(l.kind != ROTATE for l in self.letters)

    def adjoint(self) -> "Word":
        flipped = []
        for letter in reversed(self.letters):
            if letter.kind == CREATE:
                flipped.append(Letter(ANNIHILATE, letter.index))
            elif letter.kind == ANNIHILATE:
                flipped.append(Letter(CREATE, letter.index))
            else:
                flipped.append(Letter(ROTATE, -letter.index))
        return Word(self.target, tuple(flipped))

    def then(self, other: "Word") -> "Word":
        """Concatenation: self acts first, then other."""
        if self.target != other.source:
            raise MalformedWordError(f"cannot compose: target {self.target} vs source {other.source}")
        return Word(self.source, other.letters + self.letters)

    def __str__(self) -> str:
        body = " ".join(str(l) for l in self.letters)
        return f"{body} @{self.source}".strip()


@dataclass(frozen=True)
class StandardWord:
    """Normal form a_I t^r a*_J from [m]; I and J are increasing."""

    m: int
    I: tuple[int, ...] = ()
    r: int = 0
    J: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "J", tuple(self.J))
        if list(self.I) != sorted(set(self.I)) or list(self.J) != sorted(set(self.J)):
            raise MalformedWordError("I and J must be strictly increasing")
        if any(not 1 <= j <= self.m for j in self.J):
            raise MalformedWordError("annihilation index out of range")
        if any(not 1 <= i <= self.n for i in self.I):
            raise MalformedWordError("creation index out of range")
        mid = self.m - len(self.J)
        if not (0 <= self.r < max(mid, 1)):
            raise MalformedWordError(f"rotation exponent {self.r} out of range for [{mid}]")

    @property
    def n(self) -> int:
        return self.m - len(self.J) + len(self.I)

    @property
    def through(self) -> int:
        return self.m - len(self.J)

    def is_rect(self) -> bool:
        return self.r == 0

    def letters(self) -> tuple[Letter, ...]:
        out = [Letter(CREATE, i) for i in reversed(self.I)]
        if self.r:
            out.append(Letter(ROTATE, self.r))
        out += [Letter(ANNIHILATE, j) for j in self.J]
        return tuple(out)

    def as_word(self) -> Word:
        return Word(self.m, self.letters())

    def adjoint(self) -> "StandardWord":
        return normalize(self.as_word().adjoint())

    def __str__(self) -> str:
        return str(self.as_word())

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "I": list(self.I), "r": self.r, "J": list(self.J), "word": str(self)}

    @classmethod
    def from_json(cls, obj: dict) -> "StandardWord":
        return cls(int(obj["m"]), tuple(obj.get("I", ())), int(obj.get("r", 0)), tuple(obj.get("J", ())))


AnyWord = Union[Word, StandardWord]

_TOKEN = re.compile(r"^(?:a(\d+)\*|a\*(\d+)|a(\d+)|t(?:\^(-?\d+))?|@(\d+))$")


def parse_word(text: str) -> Word:
    """Parse the text syntax, e.g. ``a3 a1 t^2 a*2 a*4 @5``."""
    letters: list[Letter] = []
    source = None
    for tok in text.split():
        mt = _TOKEN.match(tok)
        if not mt:
            raise MalformedWordError(f"bad token {tok!r}")
        star_post, star_pre, create, power, src = mt.groups()
        if src is not None:
            source = int(src)
        elif create is not None:
            letters.append(Letter(CREATE, int(create)))
        elif star_post is not None or star_pre is not None:
            letters.append(Letter(ANNIHILATE, int(star_post or star_pre)))
        else:
            letters.append(Letter(ROTATE, int(power) if power is not None else 1))
    if source is None:
        raise MalformedWordError("missing source object, e.g. '@3'")
    return Word(source, tuple(letters))


def _as_word(w: AnyWord | str) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    if isinstance(w, StandardWord):
        return w.as_word()
    return w


# -- rewriting ----------------------------------------------------------------


def _expand_rotations(word: Word) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for letter, level in zip(word.letters, word.levels()):
        if letter.kind == ROTATE:
            out += [(ROTATE, 1)] * (letter.index % level if level > 1 else 0)
        else:
            out.append((letter.kind, letter.index))
    return out


def _levels(letters: list[tuple[str, int]], source: int) -> list[int]:
    out = [0] * len(letters)
    level = source
    for p in range(len(letters) - 1, -1, -1):
        out[p] = level
        kind = letters[p][0]
        level += 1 if kind == CREATE else -1 if kind == ANNIHILATE else 0
    return out


def _rewrite_once(w: list[tuple[str, int]], source: int) -> bool:
    """Apply the first applicable rule in place; False when w is standard."""
    lv = _levels(w, source)
    for p in range(len(w)):
        kx, x = w[p]
        if kx == ROTATE:
            if lv[p] <= 1:
                del w[p]
                return True
            n = lv[p]
            if p + n <= len(w) and all(w[q][0] == ROTATE for q in range(p, p + n)):
                del w[p : p + n]
                return True
        if p + 1 >= len(w):
            continue
        ky, y = w[p + 1]
        if kx == ANNIHILATE and ky == CREATE:
            if x == y:
                del w[p : p + 2]
            elif x < y:
                w[p : p + 2] = [(CREATE, y - 1), (ANNIHILATE, x)]
            else:
                w[p : p + 2] = [(CREATE, y), (ANNIHILATE, x - 1)]
            return True
        if kx == ROTATE and ky == CREATE:
            n = lv[p + 1]
            if y <= n:
                w[p : p + 2] = [(CREATE, y + 1), (ROTATE, 1)]
            else:
                w[p : p + 2] = [(CREATE, 1)]
            return True
        if kx == ANNIHILATE and ky == ROTATE:
            if x >= 2:
                w[p : p + 2] = [(ROTATE, 1), (ANNIHILATE, x - 1)]
            else:
                w[p : p + 2] = [(ANNIHILATE, lv[p + 1])]
            return True
        if kx == CREATE and ky == CREATE and x <= y:
            w[p : p + 2] = [(CREATE, y + 1), (CREATE, x)]
            return True
        if kx == ANNIHILATE and ky == ANNIHILATE and x >= y:
            w[p : p + 2] = [(ANNIHILATE, y), (ANNIHILATE, x + 1)]
            return True
    return False


def rewrite_trace(w: AnyWord | str) -> list[Word]:
    """Every intermediate word visited by the rewriting, ending at the standard word."""
    word = _as_word(w)
    letters = _expand_rotations(word)
    trace = [word]
    while _rewrite_once(letters, word.source):
        trace.append(Word(word.source, tuple(Letter(k, i) for k, i in letters)))
    return trace


def normalize(w: AnyWord | str) -> StandardWord:
    """Unique standard form of a word."""
    if isinstance(w, StandardWord):
        return w
    word = _as_word(w)
    letters = _expand_rotations(word)
    while _rewrite_once(letters, word.source):
        pass
    I = [i for k, i in letters if k == CREATE]
    J = [j for k, j in letters if k == ANNIHILATE]
    r = sum(1 for k, _ in letters if k == ROTATE)
    return StandardWord(word.source, tuple(reversed(I)), r, tuple(J))


def compose_words(w1: AnyWord | str, w2: AnyWord | str) -> StandardWord:
    """Standard form of w1 followed by w2."""
    return normalize(_as_word(w1).then(_as_word(w2)))


# -- the functor to diagrams --------------------------------------------------


def generator_diagram(letter: Letter, level: int) -> AnnDiagram:
    """Diagram of one generator acting on [level]."""
    letter.target(level)
    i = letter.index
    if letter.kind == CREATE:
        pairs = tuple((j, j if j < i else j + 1) for j in range(1, level + 1))
        return AnnDiagram(level, level + 1, pairs)
    if letter.kind == ANNIHILATE:
        pairs = tuple((j, j if j < i else j - 1) for j in range(1, level + 1) if j != i)
        return AnnDiagram(level, level - 1, pairs)
    if level == 0:
        return AnnDiagram(0, 0, ())
    return AnnDiagram(level, level, tuple((j, (j - 1 + i) % level + 1) for j in range(1, level + 1)))


def psi(w: AnyWord | str, rect: bool = False) -> AnnDiagram | RectDiagram:
    """Diagram of a word; a RectDiagram when ``rect`` is set and the offset is 0."""
    if isinstance(w, StandardWord):
        dom = [j for j in range(1, w.m + 1) if j not in set(w.J)]
        img = [i for i in range(1, w.n + 1) if i not in set(w.I)]
        d = AnnDiagram.from_sets(w.m, w.n, dom, img, w.r)
    else:
        word = _as_word(w)
        d = identity_ann(word.source)
        for letter, level in zip(reversed(word.letters), reversed(word.levels())):
            d = compose(d, generator_diagram(letter, level))
    if rect:
        if d.offset != 0:
            raise ValueError("word is not rectangular")
        return d.as_rect()
    return d


def identity_ann(n: int) -> AnnDiagram:
    return AnnDiagram(n, n, tuple((j, j) for j in range(1, n + 1)))


def psi_inverse(d: AnnDiagram | RectDiagram) -> StandardWord:
    """Standard word with J = caps, I = cups and r = offset."""
    return StandardWord(d.m, tuple(d.cups), d.offset, tuple(d.caps))


def tensor_words(w1: AnyWord | str, w2: AnyWord | str) -> StandardWord:
    """Tensor product of rectangular words, w1 on the left."""
    s1, s2 = normalize(w1), normalize(w2)
    if not (s1.is_rect() and s2.is_rect()):
        raise ValueError("tensor product is only defined for rectangular words")
    I = s1.I + tuple(i + s1.n for i in s2.I)
    J = s1.J + tuple(j + s1.m for j in s2.J)
    return StandardWord(s1.m + s2.m, I, 0, J)


def enumerate_standard(m: int, n: int, rect: bool = False) -> list[StandardWord]:
    """All standard words [m] -> [n], ordered by (through, J, I, r)."""
    out = []
    for t in range(min(m, n) + 1):
        for J in combinations(range(1, m + 1), m - t):
            for I in combinations(range(1, n + 1), n - t):
                for r in range(1 if rect else max(t, 1)):
                    out.append(StandardWord(m, I, r, J))
    return out


def random_word(rng, max_size: int = 6, max_len: int = 12) -> Word:
    """Random well-formed word with every level in [0, max_size]."""
    source = rng.randint(0, max_size)
    length = rng.randint(0, max_len)
    letters: list[Letter] = []
    level = source
    for _ in range(length):
        choices = ["t"]
        if level < max_size:
            choices.append("a")
        if level > 0:
            choices.append("s")
        kind = rng.choice(choices)
        if kind == "a":
            letters.append(Letter(CREATE, rng.randint(1, level + 1)))
            level += 1
        elif kind == "s":
            letters.append(Letter(ANNIHILATE, rng.randint(1, level)))
            level -= 1
        else:
            letters.append(Letter(ROTATE, rng.randint(-2, 3)))
    # letters were generated in application order
    return Word(source, tuple(reversed(letters)))


def generator_words(level: int, annular: bool = True) -> list[Word]:
    """All single-letter words acting on [level]."""
    out = [Word(level, (Letter(CREATE, i),)) for i in range(1, level + 2)]
    out += [Word(level, (Letter(ANNIHILATE, i),)) for i in range(1, level + 1)]
    if annular:
        out.append(Word(level, (Letter(ROTATE, 1),)))
    return out


def word_product(words: Sequence[AnyWord]) -> Word:
    """Operator product w_1 w_2 ... (rightmost acts first)."""
    ws = [_as_word(w) for w in words]
    return reduce(lambda acc, w: acc.then(w), ws[:-1][::-1], ws[-1]) if ws else Word(0)
