"""Countable involution-free groups with canonical element encodings.

Every group is presented the same way: a canonical encoding for elements,
`add`/`neg` on encodings, and a fixed enumeration that is a bijection between
the naturals and the group.  Any prefix of an enumeration is therefore a
finite, repeatable window into the group, and two elements are equal exactly
when their encodings are equal.

Shipped groups:

* ``z``         -- the integers, enumerated 0, 1, -1, 2, -2, ...
* ``z2``        -- integer pairs under componentwise addition, enumerated
                   along Cantor diagonals of the two coordinate indices.
* ``fpk``       -- the free-product kernel: pairs ``(word, shift)`` where
                   ``word`` is a reduced tuple of self-inverse generator
                   indices (no two equal adjacent entries), ``shift`` is an
                   integer, and ``len(word) + shift`` is even.  Nonabelian.
* ``z2xz-demo`` -- Z_2 x Z, a deliberate negative example: it contains the
                   involution ``(1, 0)`` and construction sessions refuse it.

All groups are written additively; ``sub(a, b)`` always means ``a + (-b)``,
which matters for the nonabelian kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Any, Callable, Iterable

Element = Any


def _int_enum(n: int) -> int:
    """n-th integer in the order 0, 1, -1, 2, -2, ..."""
    if n == 0:
        return 0
    return (n + 1) // 2 if n % 2 else -(n // 2)


def _int_index(x: int) -> int:
    return 2 * x - 1 if x > 0 else -2 * x


def _cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def _cantor_unpair(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    j = n - w * (w + 1) // 2
    return w - j, j


class Group:
    """Base interface: canonical encodings plus a fixed total enumeration.

    ``enum_key(el)`` returns a sortable key that orders elements exactly as
    the enumeration does, without materializing indices; it is what difference
    canonicalization and certificate serialization sort by.
    """

    id: str = ""
    abelian: bool = True
    zero: Element = None

    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def neg(self, a: Element) -> Element:
        raise NotImplementedError

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def enumerate(self, n: int) -> Element:
        raise NotImplementedError

    def index_of(self, el: Element) -> int:
        raise NotImplementedError

    def enum_key(self, el: Element):
        return self.index_of(el)

    def validate(self, el: Element) -> Element:
        raise NotImplementedError

    def encode(self, el: Element):
        """JSON-ready form of an element."""
        raise NotImplementedError

    def decode(self, obj) -> Element:
        """Parse a JSON form, enforcing the canonical encoding."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<group {self.id}>"


class IntegerGroup(Group):
    id = "z"
    abelian = True
    zero = 0

    def validate(self, el):
        if not isinstance(el, int) or isinstance(el, bool):
            raise ValueError(f"not an integer element: {el!r}")
        return el

    def add(self, a, b):
        return self.validate(a) + self.validate(b)

    def neg(self, a):
        return -self.validate(a)

    def enumerate(self, n):
        return _int_enum(n)

    def index_of(self, el):
        return _int_index(self.validate(el))

    def encode(self, el):
        return el

    def decode(self, obj):
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise ValueError(f"expected an integer, got {obj!r}")
        return obj


class IntegerPairGroup(Group):
    """Z x Z, componentwise; enumeration runs along Cantor diagonals of the
    per-coordinate integer indices, so ``enumerate`` starts
    (0,0), (1,0), (0,1), (-1,0), (1,1), (0,-1), ..."""

    id = "z2"
    abelian = True
    zero = (0, 0)

    def validate(self, el):
        if (
            not isinstance(el, tuple)
            or len(el) != 2
            or any(not isinstance(c, int) or isinstance(c, bool) for c in el)
        ):
            raise ValueError(f"not an integer-pair element: {el!r}")
        return el

    def add(self, a, b):
        self.validate(a)
        self.validate(b)
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        self.validate(a)
        return (-a[0], -a[1])

    def enumerate(self, n):
        i, j = _cantor_unpair(n)
        return (_int_enum(i), _int_enum(j))

    def index_of(self, el):
        self.validate(el)
        return _cantor_pair(_int_index(el[0]), _int_index(el[1]))

    def encode(self, el):
        return [el[0], el[1]]

    def decode(self, obj):
        if not isinstance(obj, list) or len(obj) != 2:
            raise ValueError(f"expected a two-element list, got {obj!r}")
        return self.validate((obj[0], obj[1]))


def _reduced_words(length: int, alphabet: int):
    """All tuples over range(alphabet) of the given length with no two equal
    adjacent entries, in lexicographic order."""
    if length == 0:
        yield ()
        return
    for word in itertools.product(range(alphabet), repeat=length):
        if all(word[i] != word[i + 1] for i in range(length - 1)):
            yield word


class FreeProductKernel(Group):
    """Pairs (word, shift) with reduced word and len(word) + shift even.

    Words multiply by concatenation with cancellation of equal adjacent
    generators (each generator is its own inverse), so the inverse of a word
    is its reversal.  The enumeration is graded: the grade of (word, shift)
    is max(len(word), 1 + max generator index, |shift|), each grade is a
    finite block, and inside a block elements sort by word length, then shift
    magnitude (nonnegative first), then the word lexicographically.
    """

    id = "fpk"
    abelian = False
    zero = ((), 0)

    # index_of refuses to materialize blocks past this grade; enum_key stays
    # cheap at any size.
    MAX_INDEX_GRADE = 9

    def __init__(self):
        self._flat: list[Element] = []
        self._index: dict[Element, int] = {}
        self._grades_done = -1

    def validate(self, el):
        ok = (
            isinstance(el, tuple)
            and len(el) == 2
            and isinstance(el[0], tuple)
            and isinstance(el[1], int)
            and not isinstance(el[1], bool)
            and all(isinstance(i, int) and not isinstance(i, bool) and i >= 0 for i in el[0])
        )
        if not ok:
            raise ValueError(f"not a free-product-kernel element: {el!r}")
        word, shift = el
        if any(word[i] == word[i + 1] for i in range(len(word) - 1)):
            raise ValueError(f"word is not reduced: {el!r}")
        if (len(word) + shift) % 2:
            raise ValueError(f"parity constraint violated: {el!r}")
        return el

    def add(self, a, b):
        self.validate(a)
        self.validate(b)
        stack = list(a[0])
        for gen in b[0]:
            if stack and stack[-1] == gen:
                stack.pop()
            else:
                stack.append(gen)
        return (tuple(stack), a[1] + b[1])

    def neg(self, a):
        self.validate(a)
        return (tuple(reversed(a[0])), -a[1])

    def _grade(self, el) -> int:
        word, shift = el
        top = (max(word) + 1) if word else 0
        return max(len(word), top, abs(shift))

    @staticmethod
    def _block_key(el):
        word, shift = el
        return (len(word), abs(shift), 0 if shift >= 0 else 1, word)

    def enum_key(self, el):
        self.validate(el)
        return (self._grade(el),) + self._block_key(el)

    def _block(self, grade: int) -> list[Element]:
        out = []
        for length in range(grade + 1):
            for word in _reduced_words(length, max(grade, 1) if length else 1):
                top = (max(word) + 1) if word else 0
                if top > grade:
                    continue
                for shift in range(-grade, grade + 1):
                    if (length + shift) % 2:
                        continue
                    if max(length, top, abs(shift)) == grade:
                        out.append((word, shift))
        out.sort(key=self._block_key)
        return out

    def _ensure_grade(self, grade: int):
        while self._grades_done < grade:
            g = self._grades_done + 1
            for el in self._block(g):
                self._index[el] = len(self._flat)
                self._flat.append(el)
            self._grades_done = g

    def enumerate(self, n):
        while len(self._flat) <= n:
            self._ensure_grade(self._grades_done + 1)
        return self._flat[n]

    def index_of(self, el):
        self.validate(el)
        grade = self._grade(el)
        if grade > self.MAX_INDEX_GRADE:
            raise ValueError(
                f"enumeration index of {el!r} (grade {grade}) is too large to materialize"
            )
        self._ensure_grade(grade)
        return self._index[el]

    def encode(self, el):
        return {"word": list(el[0]), "shift": el[1]}

    def decode(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"word", "shift"}:
            raise ValueError(f"expected {{'word': ..., 'shift': ...}}, got {obj!r}")
        if not isinstance(obj["word"], list):
            raise ValueError(f"word must be a list, got {obj['word']!r}")
        return self.validate((tuple(obj["word"]), obj["shift"]))


class InvolutionDemoGroup(Group):
    """Z_2 x Z.  Contains the involution (1, 0); exists so refusal paths can
    be exercised against a concrete group."""

    id = "z2xz-demo"
    abelian = True
    zero = (0, 0)

    def validate(self, el):
        ok = (
            isinstance(el, tuple)
            and len(el) == 2
            and el[0] in (0, 1)
            and isinstance(el[1], int)
            and not isinstance(el[1], bool)
        )
        if not ok:
            raise ValueError(f"not a Z_2 x Z element: {el!r}")
        return el

    def add(self, a, b):
        self.validate(a)
        self.validate(b)
        return ((a[0] + b[0]) % 2, a[1] + b[1])

    def neg(self, a):
        self.validate(a)
        return (a[0], -a[1])

    def enumerate(self, n):
        return (n % 2, _int_enum(n // 2))

    def index_of(self, el):
        self.validate(el)
        return 2 * _int_index(el[1]) + el[0]

    def encode(self, el):
        return [el[0], el[1]]

    def decode(self, obj):
        if not isinstance(obj, list) or len(obj) != 2:
            raise ValueError(f"expected a two-element list, got {obj!r}")
        return self.validate((obj[0], obj[1]))


@dataclass(frozen=True)
class SubgroupView:
    """Membership and coset bookkeeping for a normal subgroup H of a parent
    group.

    ``coset_key`` maps every element to the canonical representative of its
    coset, so two elements share a coset exactly when their keys are equal.
    ``coset_element(rep, i)`` enumerates one coset in the order induced by
    the parent enumeration, which keeps coset-constrained scans linear.
    """

    name: str
    parent: Group
    contains: Callable[[Element], bool]
    coset_key: Callable[[Element], Element]
    coset_element: Callable[[Element, int], Element]


def _z_cross_0(parent: Group) -> SubgroupView:
    if parent.id != "z2":
        raise ValueError("subgroup z-cross-0 lives inside the group z2")
    return SubgroupView(
        name="z-cross-0",
        parent=parent,
        contains=lambda el: el[1] == 0,
        coset_key=lambda el: (0, el[1]),
        coset_element=lambda rep, i: (_int_enum(i), rep[1]),
    )


@dataclass(frozen=True)
class InvolutionReport:
    """Outcome of scanning an enumeration prefix for elements of order two."""

    group_id: str
    prefix_size: int
    witness: Element | None

    @property
    def passed(self) -> bool:
        return self.witness is None


def assert_involution_free(group: Group, prefix_size: int) -> InvolutionReport:
    """Scan the first ``prefix_size`` enumerated elements for an x != 0 with
    x + x = 0 and report the first witness found, if any."""
    if prefix_size < 1:
        raise ValueError("prefix_size must be at least 1")
    for n in range(prefix_size):
        x = group.enumerate(n)
        if x != group.zero and group.add(x, x) == group.zero:
            return InvolutionReport(group.id, prefix_size, x)
    return InvolutionReport(group.id, prefix_size, None)


# Singletons: descriptors are immutable after construction (the kernel's
# enumeration cache is pure memoization), so sharing them is safe.
_GROUPS: dict[str, Group] = {
    g.id: g
    for g in (IntegerGroup(), IntegerPairGroup(), FreeProductKernel(), InvolutionDemoGroup())
}

_SUBGROUPS: dict[str, Callable[[Group], SubgroupView]] = {
    "z-cross-0": _z_cross_0,
}

GROUP_IDS = tuple(_GROUPS)
SUBGROUP_NAMES = tuple(_SUBGROUPS)


def get_group(group_id: str) -> Group:
    try:
        return _GROUPS[group_id]
    except KeyError:
        raise ValueError(f"unknown group {group_id!r}; known: {', '.join(_GROUPS)}") from None


def get_subgroup(name: str, parent: Group) -> SubgroupView:
    try:
        factory = _SUBGROUPS[name]
    except KeyError:
        raise ValueError(f"unknown subgroup {name!r}; known: {', '.join(_SUBGROUPS)}") from None
    return factory(parent)


def difference_rep(group: Group, d: Element) -> Element:
    """Canonical representative of the sign pair {d, -d}: whichever comes
    first in the enumeration order."""
    nd = group.neg(d)
    return d if group.enum_key(d) <= group.enum_key(nd) else nd
