"""Complete deterministic finite automata and the action of words on states.

States are 0-indexed integers, letters are 0-indexed with display names
a, b, c, ... for alphabets of size up to 26.  State sets are plain int
bitmasks (bit p set = state p present), words are tuples of letter indices;
the empty word is allowed everywhere and acts as the identity.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DfaError, DfaParseError

Word = tuple[int, ...]

LETTER_NAMES = string.ascii_lowercase

EMPTY_WORD: Word = ()


@dataclass(frozen=True)
class Dfa:
    """Complete DFA: ``delta[letter][state]`` is the successor state.

    ``delta`` is letter-major to match the text format (one row per letter).
    Immutable and safe to share between workers.
    """

    n: int
    k: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DfaError(f"state count must be positive, got {self.n}")
        if self.k < 1:
            raise DfaError(f"alphabet size must be positive, got {self.k}")
        if len(self.delta) != self.k:
            raise DfaError(f"expected {self.k} transition rows, got {len(self.delta)}")
        rows = []
        for c, row in enumerate(self.delta):
            row = tuple(row)
            if len(row) != self.n:
                raise DfaError(f"letter {c}: expected {self.n} targets, got {len(row)}")
            for p, t in enumerate(row):
                if not 0 <= t < self.n:
                    raise DfaError(f"delta({p}, {c}) = {t} out of range [0, {self.n})")
            rows.append(row)
        object.__setattr__(self, "delta", tuple(rows))

    def step(self, p: int, c: int) -> int:
        """Follow one letter from state p."""
        if not 0 <= p < self.n:
            raise DfaError(f"state {p} out of range [0, {self.n})")
        if not 0 <= c < self.k:
            raise DfaError(f"letter {c} out of range [0, {self.k})")
        return self.delta[c][p]

    @property
    def full_set(self) -> int:
        """Bitmask of all n states."""
        return (1 << self.n) - 1

    def check_word(self, w: Sequence[int]) -> Word:
        """Validate letter indices against this alphabet."""
        w = tuple(w)
        for c in w:
            if not 0 <= c < self.k:
                raise DfaError(f"letter {c} out of range [0, {self.k})")
        return w


def mask_of(states: Sequence[int] | Iterator[int], n: int) -> int:
    """Bitmask for an iterable of states, validated against [0, n)."""
    out = 0
    for p in states:
        if not 0 <= p < n:
            raise DfaError(f"state {p} out of range [0, {n})")
        out |= 1 << p
    return out


def states_of(mask: int) -> list[int]:
    """Ascending list of states present in a bitmask."""
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return out


def apply(dfa: Dfa, p: int, w: Sequence[int]) -> int:
    """State reached from p by reading w left to right; empty word returns p."""
    if not 0 <= p < dfa.n:
        raise DfaError(f"state {p} out of range [0, {dfa.n})")
    delta = dfa.delta
    k = dfa.k
    for c in w:
        if not 0 <= c < k:
            raise DfaError(f"letter {c} out of range [0, {k})")
        p = delta[c][p]
    return p


def image(dfa: Dfa, P: int, w: Sequence[int]) -> int:
    """Bitmask image { p·w : p in P }.  Never grows: |image| <= |P|."""
    if P < 0 or P >> dfa.n:
        raise DfaError(f"state set {bin(P)} has bits outside [0, {dfa.n})")
    w = dfa.check_word(w)
    # advance the whole mapping once, then gather the bits of P
    f = list(range(dfa.n))
    delta = dfa.delta
    for c in w:
        row = delta[c]
        f = [row[p] for p in f]
    out = 0
    for p in range(dfa.n):
        if P >> p & 1:
            out |= 1 << f[p]
    return out


def is_strongly_connected(dfa: Dfa) -> bool:
    """True iff every state reaches every other along labelled edges.

    Double reachability sweep from state 0: forward along edges, then along
    reversed edges; both must cover all states.
    """
    succ = [set() for _ in range(dfa.n)]
    pred = [set() for _ in range(dfa.n)]
    for row in dfa.delta:
        for p, t in enumerate(row):
            succ[p].add(t)
            pred[t].add(p)
    for adj in (succ, pred):
        seen = {0}
        stack = [0]
        while stack:
            p = stack.pop()
            for t in adj[p]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        if len(seen) != dfa.n:
            return False
    return True


# ---------------------------------------------------------------------------
# words as text

def word_from_str(text: str, k: int = len(LETTER_NAMES)) -> Word:
    """Parse a word written with letter names; whitespace is ignored."""
    out = []
    for ch in text:
        if ch.isspace():
            continue
        c = LETTER_NAMES.find(ch)
        if c < 0 or c >= k:
            raise DfaError(f"unknown letter {ch!r}")
        out.append(c)
    return tuple(out)


def word_to_str(w: Sequence[int], group: int = 0) -> str:
    """Render a word with letter names, optionally space-grouped every `group` letters."""
    if any(c < 0 or c >= len(LETTER_NAMES) for c in w):
        raise DfaError("letter index too large to render")
    s = "".join(LETTER_NAMES[c] for c in w)
    if group > 0:
        s = " ".join(s[i:i + group] for i in range(0, len(s), group))
    return s


# ---------------------------------------------------------------------------
# built-in automata

def cerny_automaton(n: int) -> Dfa:
    """The n-state, 2-letter automaton with a a cyclic shift and b merging 0 into 1.

    Letter a maps i -> (i+1) mod n; letter b maps 0 -> 1 and fixes the rest.
    Its shortest reset word has length (n-1)^2.
    """
    if n < 2:
        raise DfaError(f"need at least 2 states, got {n}")
    a = tuple((i + 1) % n for i in range(n))
    b = (1,) + tuple(range(1, n))
    return Dfa(n, 2, (a, b))


def cerny_word(n: int) -> Word:
    """The length-(n-1)^2 reset word b(a^(n-1)b)^(n-2) of cerny_automaton(n)."""
    if n < 2:
        raise DfaError(f"need at least 2 states, got {n}")
    return (1,) + ((0,) * (n - 1) + (1,)) * (n - 2)


def kari_automaton() -> Dfa:
    """Kari's 6-state, 2-letter automaton with shortest reset word of length 25.

    Letter a is a pair of 3-cycles (0 5 1)(2 4 3); letter b fixes 0, 2, 5,
    swaps 1 and 3, and sends 4 to 1.  Validated in the test suite: minimal
    reset length 25, KARI_WORD synchronizes to state 1, and the suffix counts
    at series thresholds 1..4 are 25, 17, 11, 6.
    """
    a = (5, 0, 4, 2, 3, 1)
    b = (0, 3, 2, 1, 1, 5)
    return Dfa(6, 2, (a, b))


# ba^2bab abaab baba^2b a^2baba^2b: the minimal reset word of kari_automaton()
KARI_WORD: Word = word_from_str("baabab abaab babaab aababaab")


def roman_automaton() -> Dfa:
    """Roman's 5-state, 3-letter automaton with shortest reset word of length 16.

    Letters a, b fix states 0 and 2; a sends 1, 3 to 4 and 4 to 3; b sends
    1 to 3, 3 to 1, fixes 4; c swaps 0 with 3 and 2 with 4, fixes 1.
    Validated in the test suite: minimal reset length 16, ROMAN_WORD
    synchronizes to state 4, suffix counts at thresholds 1..3 are 16, 10, 4.
    """
    a = (0, 4, 2, 4, 3)
    b = (0, 3, 2, 1, 4)
    c = (3, 1, 4, 0, 2)
    return Dfa(5, 3, (a, b, c))


# ab(ca)^2c bca^2c abca: the minimal reset word of roman_automaton()
ROMAN_WORD: Word = word_from_str("abcacac bcaac abca")


def builtin_automaton(name: str) -> Dfa:
    """Resolve a built-in automaton name: 'cerny:<n>', 'kari' or 'roman'."""
    if name == "kari":
        return kari_automaton()
    if name == "roman":
        return roman_automaton()
    if name.startswith("cerny:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise DfaError(f"bad state count in {name!r}") from None
        return cerny_automaton(n)
    raise DfaError(f"unknown automaton {name!r} (expected cerny:<n>, kari or roman)")


BUILTIN_NAMES = ("cerny:<n>", "kari", "roman")


# ---------------------------------------------------------------------------
# text and JSON formats

def serialize_dfa(dfa: Dfa) -> str:
    """Text format: header 'n k', then one line per letter with n targets."""
    lines = [f"{dfa.n} {dfa.k}"]
    for row in dfa.delta:
        lines.append(" ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    """Parse the text format; '#' lines are comments.  Errors carry line numbers.

    The canonical layout is one line per letter with n targets, but any
    whitespace layout of the n*k targets (letter-major) is accepted.
    """
    numbered = [(i + 1, line) for i, line in enumerate(text.splitlines())]
    rows = [(i, line) for i, line in numbered
            if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise DfaParseError("empty input")
    header_line, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise DfaParseError(f"expected header 'n k', got {header!r}", header_line)
    try:
        n, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise DfaParseError(f"non-integer header {header!r}", header_line) from None
    if n < 1 or k < 1:
        raise DfaParseError(f"n and k must be positive, got {n} {k}", header_line)
    tokens = [(lineno, field) for lineno, line in rows[1:] for field in line.split()]
    if len(tokens) != n * k:
        where = tokens[n * k][0] if len(tokens) > n * k else rows[-1][0]
        raise DfaParseError(f"expected {n * k} targets ({k} rows of {n}), "
                            f"got {len(tokens)}", where)
    flat = []
    for lineno, field in tokens:
        try:
            t = int(field)
        except ValueError:
            raise DfaParseError(f"non-integer target {field!r}", lineno) from None
        if not 0 <= t < n:
            raise DfaParseError(f"target {t} out of range [0, {n})", lineno)
        flat.append(t)
    return Dfa(n, k, tuple(tuple(flat[c * n:(c + 1) * n]) for c in range(k)))


def dfa_to_json(dfa: Dfa) -> str:
    """JSON mirror of the text format."""
    return json.dumps({"n": dfa.n, "k": dfa.k,
                       "delta": [list(row) for row in dfa.delta]})


def dfa_from_json(text: str) -> Dfa:
    """Parse the JSON mirror {"n":..., "k":..., "delta":[[...],...]}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DfaParseError(f"bad JSON: {e}") from None
    try:
        n, k, delta = obj["n"], obj["k"], obj["delta"]
    except (TypeError, KeyError):
        raise DfaParseError("JSON object must have keys n, k, delta") from None
    return Dfa(int(n), int(k), tuple(tuple(int(t) for t in row) for row in delta))
