"""Text formats for machines, word suites, and pattern suites.

One file describes one machine. Lines hold whitespace-separated tokens;
blank lines and lines starting with `#` are ignored. The first directive
must be `kind dfa|moore|mealy|wa|rna`, which selects the family. Errors
carry the offending line number and are never repaired silently.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fsm import Fsm
from .nominal import EPS_PATTERN, OrbitSuite, Rna, SymbolicWord, X_SOURCE
from .weighted import Wa
from .words import EPS_TOKEN, Alphabet, Suite, Word

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(Exception):
    """A syntax or consistency error at a specific line of a file."""

    def __init__(self, file: str, line: int, message: str):
        super().__init__(f"{file}:{line}: {message}")
        self.file = file
        self.line = line
        self.message = message


def _directives(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line.split()


def parse_machine(text: str, filename: str = "<string>") -> Fsm | Wa | Rna:
    """Parse one machine file, dispatching on its `kind` directive."""
    items = list(_directives(text))
    if not items:
        raise ParseError(filename, 1, "empty file: expected a `kind` directive")
    no, toks = items[0]
    if toks[0] != "kind" or len(toks) != 2:
        raise ParseError(filename, no, "first directive must be `kind <family>`")
    kind = toks[1]
    last = items[-1][0]
    try:
        if kind in ("dfa", "moore", "mealy"):
            return _parse_fsm(kind, items[1:], filename, last)
        if kind == "wa":
            return _parse_wa(items[1:], filename, last)
        if kind == "rna":
            return _parse_rna(items[1:], filename, last)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(filename, last, str(e)) from e
    raise ParseError(filename, no, f"unknown machine kind {kind!r}")


def _int(tok: str, filename: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(filename, no, f"{what}: expected an integer, got {tok!r}") from None


def _rational(tok: str, filename: str, no: int) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ParseError(filename, no, f"bad rational {tok!r} (use p or p/q, sign on p only)")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(filename, no, f"bad rational {tok!r}: zero denominator") from None


def _parse_fsm(kind: str, items, filename: str, last: int) -> Fsm:
    alphabet = None
    n_states = initial = None
    accepting: set[int] = set()
    outputs: dict = {}
    delta: dict[tuple[int, int], int] = {}
    for no, toks in items:
        d = toks[0]
        if d == "alphabet":
            if alphabet is not None:
                raise ParseError(filename, no, "duplicate alphabet directive")
            if len(toks) < 2:
                raise ParseError(filename, no, "alphabet needs at least one symbol")
            if len(set(toks[1:])) != len(toks[1:]):
                raise ParseError(filename, no, "alphabet symbols must be distinct")
            alphabet = Alphabet(tuple(toks[1:]))
        elif d == "states":
            n_states = _int(toks[1], filename, no, "states")
        elif d == "initial":
            initial = _int(toks[1], filename, no, "initial")
        elif d == "accepting":
            if kind != "dfa":
                raise ParseError(filename, no, "accepting is only valid for dfa")
            accepting.update(_int(t, filename, no, "accepting") for t in toks[1:])
        elif d == "output":
            if kind == "dfa":
                raise ParseError(filename, no, "dfa uses `accepting`, not `output`")
            if kind == "moore":
                if len(toks) != 3:
                    raise ParseError(filename, no, "moore output: `output state value`")
                key = _int(toks[1], filename, no, "output state")
                value = toks[2]
            else:
                if len(toks) != 4 or alphabet is None:
                    raise ParseError(
                        filename, no, "mealy output: `output state symbol value` after alphabet"
                    )
                q = _int(toks[1], filename, no, "output state")
                if toks[2] not in alphabet.symbols:
                    raise ParseError(filename, no, f"unknown symbol {toks[2]!r}")
                key = (q, alphabet.index(toks[2]))
                value = toks[3]
            if key in outputs:
                raise ParseError(filename, no, f"duplicate output for {toks[1]}")
            outputs[key] = value
        elif d == "trans":
            if len(toks) != 4:
                raise ParseError(filename, no, "trans: `trans src symbol dst`")
            if alphabet is None:
                raise ParseError(filename, no, "trans before alphabet directive")
            src = _int(toks[1], filename, no, "trans source")
            if toks[2] not in alphabet.symbols:
                raise ParseError(filename, no, f"unknown symbol {toks[2]!r}")
            dst = _int(toks[3], filename, no, "trans target")
            key = (src, alphabet.index(toks[2]))
            if key in delta:
                raise ParseError(filename, no, f"duplicate transition for state {src}")
            delta[key] = dst
        else:
            raise ParseError(filename, no, f"unknown directive {d!r}")
    for name, val in (("alphabet", alphabet), ("states", n_states), ("initial", initial)):
        if val is None:
            raise ParseError(filename, last, f"missing {name} directive")
    rows = []
    for q in range(n_states):
        row = []
        for a in range(len(alphabet)):
            if (q, a) not in delta:
                raise ParseError(
                    filename,
                    last,
                    f"missing transition for state {q} on {alphabet.symbols[a]!r}",
                )
            row.append(delta[(q, a)])
        rows.append(tuple(row))
    if kind == "dfa":
        bad = [q for q in accepting if not 0 <= q < n_states]
        if bad:
            raise ParseError(filename, last, f"accepting state {bad[0]} out of range")
        out = tuple(1 if q in accepting else 0 for q in range(n_states))
    elif kind == "moore":
        missing = [q for q in range(n_states) if q not in outputs]
        if missing:
            raise ParseError(filename, last, f"missing output for state {missing[0]}")
        out = tuple(outputs[q] for q in range(n_states))
    else:
        out_rows = []
        for q in range(n_states):
            row = []
            for a in range(len(alphabet)):
                if (q, a) not in outputs:
                    raise ParseError(
                        filename,
                        last,
                        f"missing output for state {q} on {alphabet.symbols[a]!r}",
                    )
                row.append(outputs[(q, a)])
            out_rows.append(tuple(row))
        out = tuple(out_rows)
    return Fsm(kind, alphabet, n_states, initial, tuple(rows), out)


def _parse_wa(items, filename: str, last: int) -> Wa:
    alphabet = None
    dim = None
    init: dict[int, Fraction] = {}
    final: dict[int, Fraction] = {}
    trans: dict[tuple[int, int, int], Fraction] = {}
    for no, toks in items:
        d = toks[0]
        if d == "alphabet":
            if len(set(toks[1:])) != len(toks[1:]) or len(toks) < 2:
                raise ParseError(filename, no, "alphabet needs distinct symbols")
            alphabet = Alphabet(tuple(toks[1:]))
        elif d == "dim":
            dim = _int(toks[1], filename, no, "dim")
            if dim <= 0:
                raise ParseError(filename, no, "dim must be positive")
        elif d == "init":
            q = _int(toks[1], filename, no, "init state")
            init[q] = _rational(toks[2], filename, no)
        elif d == "final":
            q = _int(toks[1], filename, no, "final state")
            final[q] = _rational(toks[2], filename, no)
        elif d == "trans":
            if len(toks) != 5 or alphabet is None:
                raise ParseError(filename, no, "trans: `trans src sym dst weight` after alphabet")
            src = _int(toks[1], filename, no, "trans source")
            if toks[2] not in alphabet.symbols:
                raise ParseError(filename, no, f"unknown symbol {toks[2]!r}")
            dst = _int(toks[3], filename, no, "trans target")
            key = (src, alphabet.index(toks[2]), dst)
            if key in trans:
                raise ParseError(filename, no, "duplicate transition weight")
            trans[key] = _rational(toks[4], filename, no)
        else:
            raise ParseError(filename, no, f"unknown directive {d!r}")
    if alphabet is None or dim is None:
        raise ParseError(filename, last, "missing alphabet or dim directive")
    for q in list(init) + list(final) + [s for s, _, _ in trans] + [t for _, _, t in trans]:
        if not 0 <= q < dim:
            raise ParseError(filename, last, f"state {q} out of range for dim {dim}")
    s0 = tuple(init.get(q, Fraction(0)) for q in range(dim))
    f = tuple(final.get(q, Fraction(0)) for q in range(dim))
    mats = []
    for a in range(len(alphabet)):
        # weight of src -> dst is stored at row dst, column src
        mats.append(
            tuple(
                tuple(trans.get((src, a, dst), Fraction(0)) for src in range(dim))
                for dst in range(dim)
            )
        )
    return Wa(alphabet, dim, s0, tuple(mats), f)


def _parse_rna(items, filename: str, last: int) -> Rna:
    locs: list[tuple[str, int]] = []
    loc_line: dict[str, int] = {}
    initial = None
    accepting: set[str] = set()
    raw_trans: list[tuple[int, str, int | None, str, tuple[str, ...]]] = []
    for no, toks in items:
        d = toks[0]
        if d == "loc":
            if len(toks) != 3:
                raise ParseError(filename, no, "loc: `loc name arity`")
            if toks[1] in loc_line:
                raise ParseError(filename, no, f"duplicate location {toks[1]!r}")
            arity = _int(toks[2], filename, no, "arity")
            if arity < 0:
                raise ParseError(filename, no, "arity must be nonnegative")
            locs.append((toks[1], arity))
            loc_line[toks[1]] = no
        elif d == "initial":
            initial = (no, toks[1])
        elif d == "accepting":
            accepting.update(toks[1:])
        elif d == "trans":
            if len(toks) < 3:
                raise ParseError(filename, no, "trans: `trans src guard target sources...`")
            src = toks[1]
            if toks[2] == "fresh":
                guard = None
                rest = toks[3:]
            elif toks[2] == "eq":
                if len(toks) < 4:
                    raise ParseError(filename, no, "eq guard needs a register index")
                guard = _int(toks[3], filename, no, "guard register")
                rest = toks[4:]
            else:
                raise ParseError(filename, no, f"unknown guard {toks[2]!r}")
            if not rest:
                raise ParseError(filename, no, "trans is missing its target location")
            raw_trans.append((no, src, guard, rest[0], tuple(rest[1:])))
        else:
            raise ParseError(filename, no, f"unknown directive {d!r}")
    if not locs:
        raise ParseError(filename, last, "no locations declared")
    if initial is None:
        raise ParseError(filename, last, "missing initial directive")
    index = {name: i for i, (name, _) in enumerate(locs)}

    def loc_of(name: str, no: int) -> int:
        if name not in index:
            raise ParseError(filename, no, f"unknown location {name!r}")
        return index[name]

    ino, iname = initial
    init_idx = loc_of(iname, ino)
    if locs[init_idx][1] != 0:
        raise ParseError(filename, ino, "initial location must have arity 0")
    acc_idx = set()
    for name in accepting:
        acc_idx.add(loc_of(name, last))
    rules: list[list] = [[None] * (arity + 1) for _, arity in locs]
    for no, src, guard, target, sources in raw_trans:
        si = loc_of(src, no)
        arity = locs[si][1]
        g = arity if guard is None else guard - 1
        if guard is not None and not 1 <= guard <= arity:
            raise ParseError(filename, no, f"guard register {guard} out of range for {src!r}")
        ti = loc_of(target, no)
        asg = []
        for tok in sources:
            if tok == "x":
                asg.append(X_SOURCE)
            elif tok.startswith("r"):
                asg.append(_int(tok[1:], filename, no, "assignment register"))
            else:
                raise ParseError(filename, no, f"bad assignment source {tok!r} (use x or rK)")
        if len(asg) != locs[ti][1]:
            raise ParseError(
                filename, no, f"assignment must fill all {locs[ti][1]} registers of {target!r}"
            )
        if rules[si][g] is not None:
            raise ParseError(filename, no, f"duplicate rule for {src!r} and this guard")
        rules[si][g] = (ti, tuple(asg))
    for i, (name, arity) in enumerate(locs):
        for g in range(arity + 1):
            if rules[i][g] is None:
                gname = "fresh" if g == arity else f"eq {g + 1}"
                raise ParseError(filename, last, f"missing rule for {name!r} on guard {gname}")
    return Rna(tuple(locs), init_idx, frozenset(acc_idx), tuple(tuple(r) for r in rules))


# --------------------------------------------------------------- serializers


def serialize_machine(m: Fsm | Wa | Rna) -> str:
    if isinstance(m, Fsm):
        return _serialize_fsm(m)
    if isinstance(m, Wa):
        return _serialize_wa(m)
    if isinstance(m, Rna):
        return _serialize_rna(m)
    raise TypeError(f"cannot serialize {type(m).__name__}")


def _serialize_fsm(m: Fsm) -> str:
    lines = [
        f"kind {m.kind}",
        "alphabet " + " ".join(m.alphabet.symbols),
        f"states {m.n_states}",
        f"initial {m.initial}",
    ]
    if m.kind == "dfa":
        acc = [str(q) for q in range(m.n_states) if m.output[q] == 1]
        if acc:
            lines.append("accepting " + " ".join(acc))
    elif m.kind == "moore":
        lines += [f"output {q} {m.output[q]}" for q in range(m.n_states)]
    else:
        lines += [
            f"output {q} {m.alphabet.symbols[a]} {m.output[q][a]}"
            for q in range(m.n_states)
            for a in range(len(m.alphabet))
        ]
    lines += [
        f"trans {q} {m.alphabet.symbols[a]} {m.delta[q][a]}"
        for q in range(m.n_states)
        for a in range(len(m.alphabet))
    ]
    return "\n".join(lines) + "\n"


def _serialize_wa(m: Wa) -> str:
    lines = ["kind wa", "alphabet " + " ".join(m.alphabet.symbols), f"dim {m.dim}"]
    lines += [f"init {q} {v}" for q, v in enumerate(m.s0) if v != 0]
    lines += [f"final {q} {v}" for q, v in enumerate(m.f) if v != 0]
    for a, sym in enumerate(m.alphabet.symbols):
        for src in range(m.dim):
            for dst in range(m.dim):
                v = m.mats[a][dst][src]
                if v != 0:
                    lines.append(f"trans {src} {sym} {dst} {v}")
    return "\n".join(lines) + "\n"


def _serialize_rna(m: Rna) -> str:
    lines = ["kind rna"]
    lines += [f"loc {name} {arity}" for name, arity in m.locations]
    lines.append(f"initial {m.loc_name(m.initial)}")
    if m.accepting:
        lines.append("accepting " + " ".join(sorted(m.loc_name(q) for q in m.accepting)))
    for i, (name, arity) in enumerate(m.locations):
        for g, (target, asg) in enumerate(m.rules[i]):
            guard = "fresh" if g == arity else f"eq {g + 1}"
            srcs = " ".join("x" if s == X_SOURCE else f"r{s}" for s in asg)
            line = f"trans {name} {guard} {m.loc_name(target)}"
            lines.append(line + (f" {srcs}" if srcs else ""))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- suite files


def serialize_suite(t: Suite | OrbitSuite) -> str:
    """One word (or pattern) per line, `-eps-` for the empty one."""
    if isinstance(t, Suite):
        return "".join(w.render(t.alphabet) + "\n" for w in t)
    if isinstance(t, OrbitSuite):
        return "".join(s.render() + "\n" for s in t)
    raise TypeError(f"cannot serialize {type(t).__name__}")


def parse_suite(text: str, alphabet: Alphabet, filename: str = "<string>") -> Suite:
    words = []
    for no, toks in _directives(text):
        if toks == [EPS_TOKEN]:
            words.append(Word(()))
            continue
        try:
            words.append(alphabet.word(*toks))
        except ValueError as e:
            raise ParseError(filename, no, str(e)) from e
    return Suite(alphabet, tuple(words))


def parse_patterns(text: str, filename: str = "<string>") -> OrbitSuite:
    pats = []
    for no, toks in _directives(text):
        if toks == [EPS_TOKEN]:
            pats.append(EPS_PATTERN)
            continue
        try:
            classes = tuple(int(t) for t in toks)
        except ValueError:
            raise ParseError(filename, no, f"pattern classes must be integers: {toks}") from None
        try:
            pats.append(SymbolicWord(classes))
        except ValueError as e:
            raise ParseError(filename, no, str(e)) from e
    return OrbitSuite(tuple(pats))
