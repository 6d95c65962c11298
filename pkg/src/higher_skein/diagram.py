"""Combinatorial oriented (singular) link diagrams and formal Z[h]-combinations.

A crossing records two strands by arc labels.  Strand ``a`` runs
``a_in -> a_out`` and strand ``b`` runs ``b_in -> b_out``.  For ``+`` and
``-`` crossings strand ``a`` is the understrand.  A ``*`` crossing is a double
point whose positive resolution puts strand ``b`` over.

Every arc label occurs exactly once as an incoming slot and once as an
outgoing slot, so the arcs form a permutation whose cycles are the
components that carry crossings.  Crossingless circles are counted in
``free_loops``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .algebra import H, ONE, LaurentPoly

POSITIVE, NEGATIVE, SINGULAR = "+", "-", "*"
KINDS = (POSITIVE, NEGATIVE, SINGULAR)


class DiagramError(ValueError):
    """Invalid diagram data or an operation applied to the wrong crossing."""


class Crossing(NamedTuple):
    a_in: int
    a_out: int
    b_in: int
    b_out: int
    kind: str

    def switched(self):
        if self.kind == SINGULAR:
            raise DiagramError("cannot switch a double point")
        flip = NEGATIVE if self.kind == POSITIVE else POSITIVE
        return Crossing(self.b_in, self.b_out, self.a_in, self.a_out, flip)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple
    free_loops: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(Crossing(*c) for c in self.crossings))
        validate(self)

    def __len__(self):
        return len(self.crossings)

    def singular_indices(self):
        return [i for i, c in enumerate(self.crossings) if c.kind == SINGULAR]

    def is_singular(self):
        return any(c.kind == SINGULAR for c in self.crossings)

    def arcs(self):
        return sorted(a for c in self.crossings for a in (c.a_in, c.b_in))

    def successor(self):
        succ = {}
        for c in self.crossings:
            succ[c.a_in] = c.a_out
            succ[c.b_in] = c.b_out
        return succ

    def entry(self):
        """Map arc -> (crossing index, strand letter) for the crossing it enters."""
        out = {}
        for i, c in enumerate(self.crossings):
            out[c.a_in] = (i, "a")
            out[c.b_in] = (i, "b")
        return out

    def __str__(self):
        return format_diagram(self)


def validate(d):
    if d.free_loops < 0:
        raise DiagramError("negative free loop count")
    if not d.crossings and d.free_loops == 0:
        raise DiagramError("empty diagram")
    ins, outs = [], []
    for c in d.crossings:
        if c.kind not in KINDS:
            raise DiagramError(f"unknown crossing kind {c.kind!r}")
        ins += [c.a_in, c.b_in]
        outs += [c.a_out, c.b_out]
    if len(set(ins)) != len(ins):
        raise DiagramError("an arc enters two crossing slots")
    if len(set(outs)) != len(outs):
        raise DiagramError("an arc leaves two crossing slots")
    if set(ins) != set(outs):
        raise DiagramError("arcs do not form a permutation")


def unknot():
    return Diagram((), 1, name="unknot")


def unlink(k):
    return Diagram((), k, name=f"unlink{k}")


def component_cycles(d):
    succ = d.successor()
    seen = set()
    cycles = []
    for start in sorted(succ):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = succ[x]
        cycles.append(cyc)
    return cycles


def component_count(d):
    return len(component_cycles(d)) + d.free_loops


def _check_index(d, i):
    if not 0 <= i < len(d.crossings):
        raise DiagramError(f"crossing index {i} out of range")


def switch_crossing(d, i):
    _check_index(d, i)
    cs = list(d.crossings)
    cs[i] = cs[i].switched()
    return Diagram(tuple(cs), d.free_loops)


def _smooth_many(d, indices):
    """Oriented smoothing of several crossings at once."""
    indices = set(indices)
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    touched = set()
    for i in indices:
        c = d.crossings[i]
        union(c.a_in, c.b_out)
        union(c.b_in, c.a_out)
        touched.update((c.a_in, c.a_out, c.b_in, c.b_out))
    kept = [c for j, c in enumerate(d.crossings) if j not in indices]
    remaining = set()
    for c in kept:
        remaining.update((c.a_in, c.a_out, c.b_in, c.b_out))
    classes = {find(a) for a in touched}
    alive = {find(a) for a in touched if a in remaining}
    loops = len(classes - alive)
    relabel = {a: find(a) for a in touched}
    new = [
        Crossing(*(relabel.get(a, a) for a in c[:4]), c.kind)
        for c in kept
    ]
    return Diagram(tuple(new), d.free_loops + loops)


def smooth_crossing(d, i):
    _check_index(d, i)
    return _smooth_many(d, [i])


def resolution_terms(d):
    """All 3^n (coefficient, diagram) pairs of the double-point resolution.

    Each double point becomes ``+`` (coefficient 1), ``-`` (coefficient -1)
    or is smoothed (coefficient -h).  The list is not merged.
    """
    sing = d.singular_indices()
    terms = []
    for choice in itertools.product((0, 1, 2), repeat=len(sing)):
        coeff = ONE
        cs = list(d.crossings)
        smooth = []
        for idx, ch in zip(sing, choice):
            c = cs[idx]
            if ch == 0:
                cs[idx] = c._replace(kind=POSITIVE)
            elif ch == 1:
                cs[idx] = Crossing(c.b_in, c.b_out, c.a_in, c.a_out, NEGATIVE)
                coeff = -coeff
            else:
                cs[idx] = c._replace(kind=POSITIVE)
                smooth.append(idx)
                coeff = coeff * (-H)
        terms.append((coeff, _smooth_many(Diagram(tuple(cs), d.free_loops), smooth)))
    return terms


def resolve(d):
    return FormalCombination.from_terms(resolution_terms(d))


def negative_resolution(d, chosen):
    """Double points in ``chosen`` become negative crossings, the rest are smoothed."""
    chosen = set(chosen)
    sing = set(d.singular_indices())
    if not chosen <= sing:
        raise DiagramError(f"indices {sorted(chosen - sing)} are not double points")
    cs = list(d.crossings)
    for idx in sing:
        c = cs[idx]
        if idx in chosen:
            cs[idx] = Crossing(c.b_in, c.b_out, c.a_in, c.a_out, NEGATIVE)
        else:
            cs[idx] = c._replace(kind=POSITIVE)
    return _smooth_many(Diagram(tuple(cs), d.free_loops), sing - chosen)


def disjoint_union(d1, d2):
    shift = max(d1.arcs(), default=0)
    moved = [Crossing(c.a_in + shift, c.a_out + shift, c.b_in + shift, c.b_out + shift, c.kind)
             for c in d2.crossings]
    return Diagram(d1.crossings + tuple(moved), d1.free_loops + d2.free_loops)


def add_unknot(d, k=1):
    return Diagram(d.crossings, d.free_loops + k)


def add_curl(d, arc=None, kind=POSITIVE):
    """Insert a Reidemeister-I kink into ``arc`` (or into a free loop when there are no arcs)."""
    arcs = d.arcs()
    top = max(arcs, default=0)
    p, q = top + 1, top + 2
    if arc is None:
        if not arcs:
            if d.free_loops == 0:
                raise DiagramError("no place to add a curl")
            return Diagram((Crossing(p, q, q, p, kind),), d.free_loops - 1)
        arc = arcs[0]
    if arc not in arcs:
        raise DiagramError(f"no arc {arc}")
    # arc -> curl crossing (strand a) -> p -> same crossing (strand b) -> q -> old target
    cs = [c._replace(a_in=q) if c.a_in == arc else (c._replace(b_in=q) if c.b_in == arc else c)
          for c in d.crossings]
    cs.append(Crossing(arc, p, p, q, kind))
    return Diagram(tuple(cs), d.free_loops)


# ---------------------------------------------------------------------------
# canonical form

def _pieces(d):
    """Group crossing indices into connected pieces (crossings linked by arcs)."""
    n = len(d.crossings)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for i, c in enumerate(d.crossings):
        for a in c[:4]:
            if a in owner:
                ri, rj = find(i), find(owner[a])
                if ri != rj:
                    parent[ri] = rj
            else:
                owner[a] = i
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _piece_code(d, piece, succ, entry):
    arcs = [a for i in piece for a in (d.crossings[i].a_in, d.crossings[i].b_in)]
    best = None
    for seed in arcs:
        labels = {}
        order = []

        def walk(x):
            while x not in labels:
                labels[x] = len(labels) + 1
                order.append(x)
                x = succ[x]

        walk(seed)
        k = 0
        while k < len(order):
            i, s = entry[order[k]]
            c = d.crossings[i]
            other = c.b_in if s == "a" else c.a_in
            if other not in labels:
                walk(other)
            k += 1
        code = tuple(sorted(
            (d.crossings[i].kind,) + tuple(labels[a] for a in d.crossings[i][:4]) for i in piece
        ))
        if best is None or code < best:
            best = code
    return best


def canonical_form(d):
    """A relabelled, reordered copy of ``d``; equal for diagrams that differ by labels/order."""
    if isinstance(d, Diagram) and getattr(d, "_canonical", False):
        return d
    succ = d.successor()
    entry = d.entry()
    codes = sorted(_piece_code(d, p, succ, entry) for p in _pieces(d))
    crossings = []
    offset = 0
    for code in codes:
        top = 0
        for kind, *labels in code:
            crossings.append(Crossing(*(offset + a for a in labels), kind))
            top = max(top, *labels)
        offset += top
    out = Diagram(tuple(crossings), d.free_loops, name=d.name)
    object.__setattr__(out, "_canonical", True)
    return out


def canonical_encode(d):
    c = canonical_form(d)
    body = ";".join(f"{x.kind}{x.a_in},{x.a_out},{x.b_in},{x.b_out}" for x in c.crossings)
    return f"L{c.free_loops}|{body}".encode()


# ---------------------------------------------------------------------------
# text format

_CROSSING_LINE = re.compile(r"^x\s+([+\-*])\s+(\d+)>(\d+)\s+(\d+)>(\d+)$")


def parse_diagram(text, name=""):
    crossings = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("link"):
            parts = line.split(None, 1)
            name = parts[1].strip() if len(parts) > 1 else name
            continue
        if line.startswith("loops"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise DiagramError(f"line {lineno}: malformed loops line {raw!r}")
            loops += int(parts[1])
            continue
        m = _CROSSING_LINE.match(line)
        if not m:
            raise DiagramError(f"line {lineno}: malformed line {raw!r}")
        kind = m.group(1)
        a_in, a_out, b_in, b_out = (int(g) for g in m.groups()[1:])
        if 0 in (a_in, a_out, b_in, b_out):
            raise DiagramError(f"line {lineno}: arc identifiers must be positive")
        crossings.append(Crossing(a_in, a_out, b_in, b_out, kind))
    return Diagram(tuple(crossings), loops, name=name)


def format_diagram(d):
    lines = []
    if d.name:
        lines.append(f"link {d.name}")
    if d.free_loops:
        lines.append(f"loops {d.free_loops}")
    for c in d.crossings:
        lines.append(f"x {c.kind} {c.a_in}>{c.a_out} {c.b_in}>{c.b_out}")
    return "\n".join(lines) + "\n"


def load_diagram(path):
    path = Path(path)
    return parse_diagram(path.read_text(encoding="utf-8"), name=path.stem)


# ---------------------------------------------------------------------------
# braid closures and the G family

def braid_closure(word, strands, name=""):
    """Closure of a braid word.

    Letters are ``(i, kind)`` with ``1 <= i < strands``: ``+`` is the positive
    generator (left-to-right strand over), ``-`` its inverse, ``*`` a double
    point whose positive resolution is the ``+`` letter.
    """
    arcs = list(range(1, strands + 1))
    start = list(arcs)
    nxt = strands + 1
    crossings = []
    for i, kind in word:
        if not 1 <= i < strands:
            raise DiagramError(f"generator {i} out of range for {strands} strands")
        left, right = arcs[i - 1], arcs[i]
        new_left, new_right = nxt, nxt + 1
        nxt += 2
        # the strand at position i moves to i+1 and vice versa
        if kind in (POSITIVE, SINGULAR):
            crossings.append(Crossing(right, new_left, left, new_right, kind))
        elif kind == NEGATIVE:
            crossings.append(Crossing(left, new_right, right, new_left, kind))
        else:
            raise DiagramError(f"unknown braid letter kind {kind!r}")
        arcs[i - 1], arcs[i] = new_left, new_right
    rename = {end: beg for end, beg in zip(arcs, start) if end != beg}
    free = sum(1 for end, beg in zip(arcs, start) if end == beg)
    cs = tuple(Crossing(*(rename.get(a, a) for a in c[:4]), c.kind) for c in crossings)
    return Diagram(cs, free, name=name)


def parse_braid(text):
    """Parse a braid word such as ``"1 -2 1* 2"`` into letters."""
    letters = []
    for tok in text.split():
        if tok.endswith("*"):
            letters.append((int(tok[:-1]), SINGULAR))
        elif tok.startswith("-"):
            letters.append((int(tok[1:]), NEGATIVE))
        else:
            letters.append((int(tok), POSITIVE))
    return letters


def make_G(l, n):
    """The singular link with n double points: l curls on one circle plus n-l clasped small circles.

    Each small circle meets the long circle in a double point and a positive
    crossing, so that its positive resolution is a positive Hopf clasp.
    """
    if not 0 <= l <= n:
        raise DiagramError(f"need 0 <= l <= n, got l={l}, n={n}")
    if n == 0:
        return Diagram((), 1, name="G0_0")
    # slots visited by the long component, in order: (crossing id, strand)
    slots = []
    small = []
    cid = 0
    for _ in range(n - l):
        dp, pos = cid, cid + 1
        cid += 2
        slots += [(dp, "a"), (pos, "b")]
        small.append((dp, pos))
    for _ in range(l):
        slots += [(cid, "a"), (cid, "b")]
        cid += 1
    slots_arcs = {}
    m = len(slots)
    for k, (c, s) in enumerate(slots):
        slots_arcs.setdefault(c, {})[s + "_in"] = k + 1
        slots_arcs[c][s + "_out"] = (k + 1) % m + 1
    nxt = m + 1
    for dp, pos in small:
        p, q = nxt, nxt + 1
        nxt += 2
        slots_arcs[dp]["b_in"], slots_arcs[dp]["b_out"] = q, p
        slots_arcs[pos]["a_in"], slots_arcs[pos]["a_out"] = p, q
    kinds = {}
    for dp, pos in small:
        kinds[dp], kinds[pos] = SINGULAR, POSITIVE
    crossings = []
    for c in range(cid):
        s = slots_arcs[c]
        crossings.append(Crossing(s["a_in"], s["a_out"], s["b_in"], s["b_out"], kinds.get(c, SINGULAR)))
    return Diagram(tuple(crossings), 0, name=f"G{l}_{n}")


# ---------------------------------------------------------------------------
# formal combinations

class FormalCombination:
    """Finite Z[h]-combination of link diagrams keyed by canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for d, c in (terms or {}).items():
            self._add(d, c)

    @classmethod
    def from_terms(cls, pairs):
        out = cls()
        for c, d in pairs:
            out._add(d, c)
        return out

    @classmethod
    def single(cls, d, c=ONE):
        return cls.from_terms([(c, d)])

    def _add(self, d, c):
        c = LaurentPoly.coerce(c)
        key = canonical_form(d)
        total = self.terms.get(key, LaurentPoly()) + c
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: canonical_encode(kv[0]))

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        out = FormalCombination(self.terms)
        for d, c in other.terms.items():
            out._add(d, c)
        return out

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = LaurentPoly.coerce(k)
        out = FormalCombination()
        for d, c in self.terms.items():
            out._add(d, c * k)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalCombination):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        lines = []
        for d, c in self.items():
            lines.append(f"({c}) * [{canonical_encode(d).decode()}]")
        return "\n".join(lines)


def differentiate_combination(comb):
    """Replace every coefficient by its h-derivative; diagrams are untouched."""
    return FormalCombination({d: c.derivative() for d, c in comb.terms.items()})


# ---------------------------------------------------------------------------
# eight-term combination

# The eight three-strand singular braids.  Letters are (generator, kind).
EIGHT_T_WORDS = (
    ((1, SINGULAR), (2, SINGULAR), (1, POSITIVE)),
    ((1, POSITIVE), (2, SINGULAR), (1, SINGULAR)),
    ((2, SINGULAR), (1, SINGULAR), (2, NEGATIVE)),
    ((2, NEGATIVE), (1, SINGULAR), (2, SINGULAR)),
    ((2, SINGULAR), (1, POSITIVE)),
    ((1, POSITIVE), (2, SINGULAR)),
    ((1, SINGULAR), (2, NEGATIVE)),
    ((2, NEGATIVE), (1, SINGULAR)),
)
EIGHT_T_SIGNS = (1, -1, 1, -1, 1, -1, 1, -1)

DATA_DIR = Path(__file__).resolve().parent / "data"


def eight_t_closures():
    """Closure id -> completion braid word, read from the shipped table."""
    out = {}
    text = (DATA_DIR / "eightt" / "closures.txt").read_text(encoding="utf-8")
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ident, _, word = line.partition(":")
        out[ident.strip()] = word.strip()
    return out


def eight_t_diagrams_from_braids(closure):
    closures = eight_t_closures()
    if closure not in closures:
        raise DiagramError(f"unknown 8T closure {closure!r}; known: {sorted(closures)}")
    tail = parse_braid(closures[closure])
    return [braid_closure(list(w) + tail, 3, name=f"{closure}_t{k + 1}")
            for k, w in enumerate(EIGHT_T_WORDS)]


def eight_t_diagrams(closure):
    """The eight closed singular links t1..t8 for ``closure``, loaded from data files."""
    closures = eight_t_closures()
    if closure not in closures:
        raise DiagramError(f"unknown 8T closure {closure!r}; known: {sorted(closures)}")
    return [load_diagram(DATA_DIR / "eightt" / f"{closure}_t{k}.link") for k in range(1, 9)]


def eight_t_combination(closure):
    """t1 - t2 + t3 - t4 + h (t5 - t6 + t7 - t8), every term resolved."""
    total = FormalCombination()
    for k, d in enumerate(eight_t_diagrams(closure)):
        coeff = LaurentPoly.constant(EIGHT_T_SIGNS[k])
        if k >= 4:
            coeff = coeff * H
        total = total + resolve(d) * coeff
    return total
