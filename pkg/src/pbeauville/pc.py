"""Power-commutator presentations of finite p-groups.

Generators are 0-based internally and 1-based in the text format.  A
presentation on g_0..g_{n-1} carries, for every i, the word g_i^p and, for
every pair i > j, the word [g_i, g_j].  Words only involve generators with
larger index than the ones they define.

Two independent ways of computing are offered: symbolic collection on
letter stacks (:func:`collect`, :func:`collect_from_the_right`) and the
per-generator right action on the p^n normal forms
(:func:`action_tables`), which is what concrete groups use.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Word = tuple[tuple[int, int], ...]
GroupElement = tuple[int, ...]


class PresentationError(ValueError):
    """Malformed presentation text or relation."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PcPresentation:
    p: int
    n: int
    power: tuple[Word, ...]
    comm: tuple[tuple[Word, ...], ...]  # comm[i][j] = [g_i, g_j] for j < i

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise PresentationError(f"p = {self.p} is not prime")
        if self.n < 0:
            raise PresentationError("negative length")
        if len(self.power) != self.n or len(self.comm) != self.n:
            raise PresentationError("relation tables do not match n")
        for i, w in enumerate(self.power):
            _check_word(w, i, self.p, self.n)
        for i, row in enumerate(self.comm):
            if len(row) != i:
                raise PresentationError(f"commutator row {i} has wrong length")
            for w in row:
                _check_word(w, i, self.p, self.n)

    @property
    def order(self) -> int:
        return self.p**self.n

    @classmethod
    def from_relations(cls, p: int, n: int, power=None, comm=None) -> "PcPresentation":
        """Build from sparse dicts ``{i: word}`` and ``{(i, j): word}`` (0-based, i > j)."""
        power = power or {}
        comm = comm or {}
        pw = [_as_word(power.get(i, ())) for i in range(n)]
        cm = [[()] * i for i in range(n)]
        for (i, j), w in comm.items():
            if not i > j:
                raise PresentationError(f"commutator ({i + 1},{j + 1}) needs i > j")
            cm[i][j] = _as_word(w)
        return cls(p, n, tuple(pw), tuple(tuple(r) for r in cm))

    def truncate(self, k: int) -> "PcPresentation":
        """Presentation of G / <g_k, ..., g_{n-1}> (drop trailing generators)."""
        cut = lambda w: tuple((g, e) for g, e in w if g < k)
        return PcPresentation(
            self.p, k,
            tuple(cut(w) for w in self.power[:k]),
            tuple(tuple(cut(w) for w in row) for row in self.comm[:k]),
        )

    def relation_items(self):
        """Yield ``(kind, indices, word)`` for every non-trivial relation."""
        for i, w in enumerate(self.power):
            if w:
                yield "pow", (i,), w
        for i, row in enumerate(self.comm):
            for j, w in enumerate(row):
                if w:
                    yield "comm", (i, j), w


def _as_word(w) -> Word:
    return tuple((int(g), int(e)) for g, e in w if int(e) != 0)


def _check_word(w: Word, i: int, p: int, n: int):
    last = i
    for g, e in w:
        if g <= last:
            raise PresentationError(
                f"word {format_word(w)} for generator {i + 1} is not in weighted form")
        if g >= n:
            raise PresentationError(f"generator {g + 1} out of range")
        if not 1 <= e < p:
            raise PresentationError(f"exponent {e} outside [1, {p})")
        last = g


# text format -----------------------------------------------------------------

_WORD_TOKEN = re.compile(r"^(\d+)\^(\d+)$")


def parse_presentation(text: str) -> PcPresentation:
    p = n = None
    power: dict[int, Word] = {}
    comm: dict[tuple[int, int], Word] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "p":
            if p is not None:
                raise PresentationError("duplicate p line", lineno)
            p = _int(rest, lineno)
        elif head == "n":
            if n is not None:
                raise PresentationError("duplicate n line", lineno)
            n = _int(rest, lineno)
        elif head in ("pow", "comm"):
            if p is None or n is None:
                raise PresentationError("relation before p and n", lineno)
            lhs, colon, rhs = rest.partition(":")
            if not colon:
                raise PresentationError("missing ':'", lineno)
            idx = [_int(t, lineno) for t in lhs.split()]
            for k in idx:
                if not 1 <= k <= n:
                    raise PresentationError(f"generator {k} out of range", lineno)
            word = _parse_word(rhs, p, lineno)
            if head == "pow":
                if len(idx) != 1:
                    raise PresentationError("pow takes one index", lineno)
                i = idx[0] - 1
                if i in power:
                    raise PresentationError(f"duplicate pow {i + 1}", lineno)
                _check_line_word(word, i, p, n, lineno)
                power[i] = word
            else:
                if len(idx) != 2:
                    raise PresentationError("comm takes two indices", lineno)
                i, j = idx[0] - 1, idx[1] - 1
                if not i > j:
                    raise PresentationError(f"comm {i + 1} {j + 1} requires i > j", lineno)
                if (i, j) in comm:
                    raise PresentationError(f"duplicate comm {i + 1} {j + 1}", lineno)
                _check_line_word(word, i, p, n, lineno)
                comm[(i, j)] = word
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno)
    if p is None or n is None:
        raise PresentationError("missing p or n line")
    return PcPresentation.from_relations(p, n, power, comm)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PresentationError(f"expected integer, got {tok!r}", lineno) from None


def _parse_word(text: str, p: int, lineno: int) -> Word:
    out = []
    for tok in text.split():
        m = _WORD_TOKEN.match(tok)
        if not m:
            raise PresentationError(f"bad word token {tok!r}", lineno)
        k, e = int(m.group(1)), int(m.group(2))
        if not 1 <= e < p:
            raise PresentationError(f"exponent {e} outside [1, {p})", lineno)
        out.append((k - 1, e))
    return tuple(out)


def _check_line_word(word: Word, i: int, p: int, n: int, lineno: int):
    try:
        _check_word(word, i, p, n)
    except PresentationError as exc:
        raise PresentationError(str(exc), lineno) from None


def format_word(w: Word) -> str:
    return " ".join(f"{g + 1}^{e}" for g, e in w)


def format_presentation(pres: PcPresentation, comment: str | None = None) -> str:
    """Canonical text form; identical presentations give identical bytes."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines += [f"p {pres.p}", f"n {pres.n}"]
    for kind, idx, w in pres.relation_items():
        ids = " ".join(str(i + 1) for i in idx)
        lines.append(f"{kind} {ids} : {format_word(w)}")
    return "\n".join(lines) + "\n"


def parse_word(text: str) -> list[tuple[int, int]]:
    """Parse a free word such as ``"1^7 2^-1 1"`` into 0-based letters."""
    out = []
    for tok in text.split():
        g, _, e = tok.partition("^")
        out.append((int(g) - 1, int(e) if e else 1))
    return out


# symbolic collection ----------------------------------------------------------

def _letters(w: Iterable[tuple[int, int]]) -> list[int]:
    return [g for g, e in w for _ in range(e)]


@functools.lru_cache(maxsize=64)
def _tables(pres: PcPresentation):
    power = [_letters(w) for w in pres.power]
    comm = [[_letters(w) for w in row] for row in pres.comm]
    return power, comm


def _collect_letters(pres: PcPresentation, letters: Sequence[int], start=None) -> list[int]:
    """Collection from the left of positive letters onto a collected vector."""
    p, n = pres.p, pres.n
    power, comm = _tables(pres)
    e = list(start) if start is not None else [0] * n
    stack = list(reversed(letters))
    while stack:
        k = stack.pop()
        push: list[int] = []
        tail = False
        for j in range(k + 1, n):
            if e[j]:
                tail = True
                break
        if tail:
            conj: list[int] = []
            for j in range(k + 1, n):
                cj = comm[j][k]
                for _ in range(e[j]):
                    conj.append(j)
                    conj.extend(cj)
                e[j] = 0
        e[k] += 1
        if e[k] == p:
            e[k] = 0
            push.extend(power[k])
        if tail:
            push.extend(conj)
        if push:
            stack.extend(reversed(push))
    return e


@functools.lru_cache(maxsize=None)
def _inverse_letters(pres: PcPresentation, k: int) -> tuple[int, ...]:
    # g_k^{-1} = g_k^{p-1} (g_k^p)^{-1}
    word = [k] * (pres.p - 1)
    for g, e in reversed(pres.power[k]):
        for _ in range(e):
            word.extend(_inverse_letters(pres, g))
    return tuple(_element_letters(tuple(_collect_letters(pres, word))))


def _element_letters(e: Sequence[int]) -> list[int]:
    return [g for g, c in enumerate(e) for _ in range(c)]


def _positive(pres: PcPresentation, word: Iterable[tuple[int, int]]) -> list[int]:
    """Rewrite signed / oversized exponents into positive letters."""
    p = pres.p
    out: list[int] = []
    for g, e in word:
        if not 0 <= g < pres.n:
            raise PresentationError(f"generator {g + 1} out of range")
        if e >= 0:
            out.extend([g] * e)
        else:
            out.extend(_inverse_letters(pres, g) * (-e))
    return out


def collect(pres: PcPresentation, word: Iterable[tuple[int, int]]) -> GroupElement:
    """Normal form of a word given as ``(generator, exponent)`` pairs."""
    return tuple(_collect_letters(pres, _positive(pres, word)))


def collect_from_the_right(pres: PcPresentation, word: Iterable[tuple[int, int]],
                           max_steps: int = 10**6) -> GroupElement:
    """Rewrite the rightmost uncollected spot first.

    Slow; kept only as a second rewriting strategy for differential tests.
    """
    p = pres.p
    power, comm = _tables(pres)
    w = _positive(pres, word)
    for _ in range(max_steps):
        pos, kind = -1, None
        run = 1
        for i in range(len(w) - 1, 0, -1):
            if w[i - 1] > w[i]:
                pos, kind = i - 1, "swap"
                break
            if w[i - 1] == w[i]:
                run += 1
                if run == p:
                    pos, kind = i - 1, "power"
                    break
            else:
                run = 1
        if kind is None:
            break
        if kind == "swap":
            a, b = w[pos], w[pos + 1]
            w[pos:pos + 2] = [b, a] + comm[a][b]
        else:
            w[pos:pos + p] = power[w[pos]]
    else:
        raise RuntimeError("rewriting did not terminate")
    e = [0] * pres.n
    for g in w:
        e[g] += 1
    return tuple(e)


def _check(pres: PcPresentation, *elts: Sequence[int]):
    for x in elts:
        if len(x) != pres.n:
            raise ValueError(f"element of length {len(x)} for presentation of length {pres.n}")


def identity(pres: PcPresentation) -> GroupElement:
    return (0,) * pres.n


def generator(pres: PcPresentation, k: int) -> GroupElement:
    e = [0] * pres.n
    e[k] = 1
    return tuple(e)


def multiply(pres: PcPresentation, x: GroupElement, y: GroupElement) -> GroupElement:
    _check(pres, x, y)
    return tuple(_collect_letters(pres, _element_letters(y), start=x))


def inverse(pres: PcPresentation, x: GroupElement) -> GroupElement:
    _check(pres, x)
    letters: list[int] = []
    for g in reversed(_element_letters(x)):
        letters.extend(_inverse_letters(pres, g))
    return tuple(_collect_letters(pres, letters))


def power_int(pres: PcPresentation, x: GroupElement, m: int) -> GroupElement:
    _check(pres, x)
    if m < 0:
        x, m = inverse(pres, x), -m
    result = identity(pres)
    while m:
        if m & 1:
            result = multiply(pres, result, x)
        x = multiply(pres, x, x)
        m >>= 1
    return result


def commutator(pres: PcPresentation, x: GroupElement, y: GroupElement) -> GroupElement:
    """[x, y] = x^-1 y^-1 x y."""
    xi, yi = inverse(pres, x), inverse(pres, y)
    return multiply(pres, multiply(pres, xi, yi), multiply(pres, x, y))


def conjugate(pres: PcPresentation, x: GroupElement, g: GroupElement) -> GroupElement:
    """x^g = g^-1 x g."""
    return multiply(pres, multiply(pres, inverse(pres, g), x), g)


def element_order(pres: PcPresentation, x: GroupElement) -> int:
    _check(pres, x)
    order = 1
    while any(x):
        x = power_int(pres, x, pres.p)
        order *= pres.p
    return order


# right action on normal forms ------------------------------------------------

def element_index(p: int, e: Sequence[int]) -> int:
    """Lexicographic index of an exponent vector (g_0 most significant)."""
    idx = 0
    for c in e:
        idx = idx * p + c
    return idx


def index_element(p: int, n: int, idx: int) -> GroupElement:
    out = [0] * n
    for k in range(n - 1, -1, -1):
        idx, out[k] = divmod(idx, p)
    return tuple(out)


def digit_matrix(p: int, n: int) -> np.ndarray:
    idx = np.arange(p**n, dtype=np.int64)
    dig = np.empty((n, p**n), dtype=np.int8)
    for k in range(n):
        dig[k] = (idx // p ** (n - 1 - k)) % p
    return dig


def _apply_letters(tables, x, letters):
    for g in letters:
        x = tables[g][x]
    return x


def action_tables(pres: PcPresentation, digits: np.ndarray | None = None) -> list[np.ndarray]:
    """Right multiplication by each generator as index arrays.

    ``T[k][x]`` is the index of x * g_k.  Built from the last generator
    upwards: x = u v with v in <g_{k+1}, ...>, and x g_k = (u g_k) v^{g_k},
    where conjugation by g_k on the tail subgroup is assembled from the
    already-built tables.  The arrays are well defined for any presentation;
    they describe the group only when :func:`check_consistency` passes.
    """
    p, n = pres.p, pres.n
    size = p**n
    if digits is None:
        digits = digit_matrix(p, n)
    power, comm = _tables(pres)
    T: list[np.ndarray] = [None] * n  # type: ignore[list-item]
    idx = np.arange(size, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        low = p ** (n - 1 - k)
        # conjugation by g_k on the tail subgroup, indices 0..low-1
        conj = np.zeros(low, dtype=np.int64)
        for j in range(k + 1, n):
            cj = _apply_letters(T, p ** (n - 1 - j), comm[j][k])
            cj_letters = _element_letters(index_element(p, n, cj))
            dj = digits[j, :low]
            for e in range(1, p):
                mask = dj >= e
                if not mask.any():
                    break
                conj = np.where(mask, _apply_letters(T, conj, cj_letters), conj)
        hi, v = np.divmod(idx, low)
        cv = conj[v]
        ek = digits[k]
        out = (hi + 1) * low + cv
        over = ek == p - 1
        if over.any():
            pw = _apply_letters(T, 0, power[k]) if power[k] else 0
            # pw * cv, a left multiplication by a fixed tail element
            prod = np.full(int(over.sum()), pw, dtype=np.int64)
            cvo = cv[over]
            for j in range(k + 1, n):
                dj = digits[j][cvo]
                for e in range(1, p):
                    mask = dj >= e
                    if not mask.any():
                        break
                    prod = np.where(mask, T[j][prod], prod)
            out[over] = (hi[over] - (p - 1)) * low + prod
        T[k] = out
    return T


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    elements: int           # distinct normal forms reached from the identity
    expected: int
    relation: str | None = None
    witness: tuple[str, str] | None = None  # two words with different normal forms

    def __bool__(self):
        return self.ok


def check_consistency(pres: PcPresentation, tables=None) -> ConsistencyReport:
    """Certify that the presentation defines a group of order p^n.

    The right action of each generator on the p^n normal forms is built and
    every defining relation is checked as an identity of maps.  If all
    relations hold, the generated transformation monoid is a group acting
    regularly, so the presented group has exactly p^n elements; any failure
    yields a point x and two words whose action on x differs.
    """
    p, n = pres.p, pres.n
    T = tables if tables is not None else action_tables(pres)
    reached = _reached(T, p, n)
    power, comm = _tables(pres)
    idx = np.arange(p**n, dtype=np.int64)
    fail = None
    for k in range(n):
        lhs = idx
        for _ in range(p):
            lhs = T[k][lhs]
        rhs = _apply_letters(T, idx, power[k])
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            x = int(bad[0])
            fail = (f"pow {k + 1}", _wit(p, n, x, [(k, p)]), _wit(p, n, x, pres.power[k]))
            break
    if fail is None:
        for i in range(n):
            for j in range(i):
                lhs = T[j][T[i][idx]]
                rhs = _apply_letters(T, T[i][T[j][idx]], comm[i][j])
                bad = np.flatnonzero(lhs != rhs)
                if bad.size:
                    x = int(bad[0])
                    fail = (f"comm {i + 1} {j + 1}",
                            _wit(p, n, x, [(i, 1), (j, 1)]),
                            _wit(p, n, x, [(j, 1), (i, 1)] + list(pres.comm[i][j])))
                    break
            if fail:
                break
    if fail is None and reached == p**n:
        return ConsistencyReport(True, reached, p**n)
    if fail is None:
        return ConsistencyReport(False, reached, p**n, "enumeration", None)
    return ConsistencyReport(False, reached, p**n, fail[0], (fail[1], fail[2]))


def _wit(p, n, x, word) -> str:
    e = index_element(p, n, x)
    head = [(g, c) for g, c in enumerate(e) if c]
    return format_word(tuple(head) + tuple(word)) or "1"


def _reached(T, p, n) -> int:
    """Number of normal forms reachable from the identity under the action."""
    seen = np.zeros(p**n, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = np.concatenate([t[frontier] for t in T]) if T else frontier[:0]
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return int(seen.sum())
