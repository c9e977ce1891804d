"""Memoized evaluation of the shuffle-state series.

A state is a permutation sigma together with two bit strings v, w whose
weights both equal the degree of sigma.  Eight rewrite rules reduce any
state to empty strings.  Writing l for the weight and looking at the last
bit of each string:

  R1  both strings empty, or one empty and the other all zeros:
      the value is ((1+A) / ((1-Q)(1-T)))^m with m the remaining length.
  R2  both end in 1, l = 1: strip the two 1s and multiply by
      (1+A) / ((1-Q)(1-T)).
  R3  both end in 1, l >= 2, sigma fixes l: strip, truncate sigma,
      multiply by (Q^(l-1) + A) / (1-Q).
  R4  both end in 1, l >= 2, sigma moves l: strip, truncate sigma,
      multiply by Q^(l-1) + A.
  R5  v ends in 0, w ends in 1: drop the trailing 0 of v and cycle the 1
      to the front of w.  Thinking of sigma as matching the ones of v to
      the ones of w, the move relabels the ones of w cyclically, so sigma
      is postcomposed with the forward l-cycle.
  R6  v ends in 1, w ends in 0: the mirror move on v relabels the domain,
      so sigma is precomposed with the inverse l-cycle.
  R7  both strings all zeros, nonempty: restart with a single leading 1
      on each side.
  R8  both end in 0, l >= 1: Q^(-l) * (value with the trailing zeros
      traded for leading 1s and sigma extended by a new fixed point)
      plus Q^(-l) * T * (value with the zeros cycled to the front).

Every rule drives the slack (total length minus twice the weight) down,
except that R2, R3, R4 keep it while shortening the strings and the second
branch of R8 keeps both while moving the trailing zero block strictly
forward.  That triple is a lexicographic termination measure, asserted on
every edge.

The engine runs on an explicit work stack, never on native recursion, and
caches every state value in a MemoTable that may be shared freely across
calls and threads: entries are pure function values, so duplicated work is
benign and last-write-wins is consistent.  A table built with evict_above
set keeps only short states resident, dropping longer values once consumed;
reuse above any such bound is rare, so the trade buys an order of magnitude
of space for a small constant in time.

evaluate_q1 is the collapsed engine over Q = 1.  Permutations drop out and
values live in N[A, T].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .perm import (
    Perm,
    compose,
    extend_front,
    fixes_last,
    identity,
    inverse_rotation,
    is_permutation,
    rotation,
    to_text,
    from_text,
    truncate_last,
)
from .ring import A, LaurentPoly, ONE, StructuredRational

_ONE_PLUS_A = ONE + A


class InvariantViolation(ValueError):
    """State weights and permutation degree disagree."""


class MalformedBase(RuntimeError):
    """A base rule was selected for a state that does not satisfy it."""


class CacheError(RuntimeError):
    """A persisted memo table could not be read."""


class RecState(NamedTuple):
    sigma: Perm
    v: str
    w: str


def weight(bits: str) -> int:
    return bits.count("1")


def make_state(sigma: Perm, v: str, w: str) -> RecState:
    """Validated state constructor."""
    s = RecState(sigma, v, w)
    rule_select(s)
    return s


def rule_select(s: RecState) -> str:
    """The unique applicable rule, R1 through R8."""
    sigma, v, w = s
    l = len(sigma)
    if not is_permutation(sigma):
        raise InvariantViolation(f"not a permutation: {sigma!r}")
    for bits in (v, w):
        if bits.count("0") + bits.count("1") != len(bits):
            raise InvariantViolation(f"not a bit string: {bits!r}")
    if weight(v) != l or weight(w) != l:
        raise InvariantViolation(
            f"weights ({weight(v)}, {weight(w)}) do not match degree {l}"
        )
    if not v and not w:
        return "R1"
    if not v or not w:
        if l:
            raise MalformedBase("one string empty but permutation nonempty")
        return "R1"
    x, y = v[-1], w[-1]
    if x == "1" and y == "1":
        if l == 1:
            return "R2"
        return "R3" if fixes_last(sigma) else "R4"
    if x == "0" and y == "1":
        return "R5"
    if x == "1" and y == "0":
        return "R6"
    if l == 0:
        if "1" in v or "1" in w:
            raise MalformedBase("restart rule needs all-zero strings")
        return "R7"
    return "R8"


def _trailing_zeros(bits: str) -> int:
    return len(bits) - len(bits.rstrip("0"))


def measure(s: RecState) -> tuple[int, int, int]:
    """Strictly decreasing along every rule edge, in lexicographic order."""
    total = len(s.v) + len(s.w)
    l = len(s.sigma)
    m3 = _trailing_zeros(s.v) + _trailing_zeros(s.w) if l else 0
    return (total - 2 * l, total, m3)


def expand(s: RecState) -> tuple[str, tuple[RecState, ...]]:
    """Rule id and child states, asserting the termination measure drops."""
    rule = rule_select(s)
    sigma, v, w = s
    l = len(sigma)
    if rule == "R1":
        kids: tuple[RecState, ...] = ()
    elif rule == "R2":
        kids = (RecState((), v[:-1], w[:-1]),)
    elif rule in ("R3", "R4"):
        kids = (RecState(truncate_last(sigma), v[:-1], w[:-1]),)
    elif rule == "R5":
        kids = (RecState(compose(rotation(l), sigma), v[:-1], "1" + w[:-1]),)
    elif rule == "R6":
        kids = (RecState(compose(sigma, inverse_rotation(l)), "1" + v[:-1], w[:-1]),)
    elif rule == "R7":
        kids = (RecState((1,), "1" + "0" * (len(v) - 1), "1" + "0" * (len(w) - 1)),)
    else:  # R8
        kids = (
            RecState(extend_front(sigma), "1" + v[:-1], "1" + w[:-1]),
            RecState(sigma, "0" + v[:-1], "0" + w[:-1]),
        )
    parent = measure(s)
    for kid in kids:
        assert measure(kid) < parent, (s, rule, kid)
    return rule, kids


_BASE_CACHE: dict[int, StructuredRational] = {}


def _base_value(m: int) -> StructuredRational:
    """((1+A) / ((1-Q)(1-T)))^m, cached per length."""
    try:
        return _BASE_CACHE[m]
    except KeyError:
        val = _BASE_CACHE[m] = StructuredRational._make(_ONE_PLUS_A**m, m, m)
        return val


def apply_rule(
    rule: str, s: RecState, kid_values: tuple[StructuredRational, ...]
) -> StructuredRational:
    """Combine child values into the parent value.

    Multiplications by (1+A) and (Q^(l-1)+A) cannot introduce (1-Q) or
    (1-T) factors, those being prime, so denominators are adjusted
    directly; only the sum in R8 needs re-cancellation.
    """
    if rule == "R1":
        return _base_value(len(s.v) + len(s.w))
    if rule in ("R5", "R6", "R7"):
        return kid_values[0]
    if rule == "R2":
        c = kid_values[0]
        return StructuredRational._make(
            c.num * _ONE_PLUS_A, c.qpow + 1, c.tpow + 1
        )
    l = len(s.sigma)
    if rule == "R3":
        c = kid_values[0]
        factor = LaurentPoly.monomial(1, 0, l - 1, 0) + A
        return StructuredRational._make(c.num * factor, c.qpow + 1, c.tpow)
    if rule == "R4":
        c = kid_values[0]
        factor = LaurentPoly.monomial(1, 0, l - 1, 0) + A
        return StructuredRational._make(c.num * factor, c.qpow, c.tpow)
    # R8
    front, cycled = kid_values
    total = front + cycled.shifted(et=1)
    return total.shifted(eq=-l)


class MemoTable:
    """Shared cache of state values with hit and miss counters.

    evict_above bounds retention: a state with len(v) + len(w) above the
    bound is dropped as soon as a parent consumes it, and recomputed on
    the rare later reuse.  Long states are consumed once on almost every
    input, so a bound near the root length costs little time and keeps
    only the short, heavily shared floor resident.  None keeps everything.
    """

    def __init__(self, evict_above: int | None = None) -> None:
        self.entries: dict[RecState, StructuredRational] = {}
        self.hits = 0
        self.misses = 0
        self.evict_above = evict_above
        self.evictions = 0

    def __len__(self) -> int:
        return len(self.entries)

    def stats(self) -> dict[str, int]:
        return {"entries": len(self.entries), "hits": self.hits, "misses": self.misses}


def evaluate(state: RecState, memo: MemoTable | None = None) -> StructuredRational:
    """Value of a state under the eight-rule system, memoized."""
    if memo is None:
        memo = MemoTable()
    entries = memo.entries
    evict = memo.evict_above
    root_len = len(state.v) + len(state.w)
    depth_bound = (root_len + 1) ** 3 + 1
    hits = misses = evictions = 0
    pending: list[tuple[RecState, int]] = [(state, 1)]
    while pending:
        s, depth = pending[-1]
        if s in entries:
            # found memoized: the root on a warm table, or a state shared
            # between branches
            hits += 1
            pending.pop()
            continue
        rule, kids = expand(s)
        missing = [k for k in kids if k not in entries]
        if missing:
            assert depth < depth_bound, "termination measure violated"
            pending.extend((k, depth + 1) for k in missing)
            continue
        entries[s] = apply_rule(rule, s, tuple(entries[k] for k in kids))
        misses += 1
        pending.pop()
        if evict is not None:
            # drop consumed children above the bound; a re-reached child
            # just recomputes, the loop never assumes presence
            for k in kids:
                if len(k.v) + len(k.w) > evict:
                    del entries[k]
                    evictions += 1
    memo.hits += hits
    memo.misses += misses
    memo.evictions += evictions
    return entries[state]


# ----------------------------------------------------------------------
# trace evaluation: same arithmetic, no memo, full rule tree kept


@dataclass
class TraceNode:
    state: RecState
    rule: str
    q_power: int  # this node's own (1-Q) denominator contribution
    children: list["TraceNode"] = field(default_factory=list)
    value: StructuredRational | None = None


_RULE_Q_POWER = {"R2": 1, "R3": 1}


def trace_evaluate(state: RecState) -> TraceNode:
    """Unmemoized evaluation that keeps the whole rule tree.

    Shares apply_rule with the memoized engine, so it is an oracle for
    memo purity, not for the rule arithmetic itself.
    """
    root = TraceNode(state, *_rule_and_qpow(state))
    stack = [root]
    order: list[TraceNode] = []
    while stack:
        node = stack.pop()
        order.append(node)
        _, kids = expand(node.state)
        for kid in kids:
            child = TraceNode(kid, *_rule_and_qpow(kid))
            node.children.append(child)
            stack.append(child)
    for node in reversed(order):
        node.value = apply_rule(
            node.rule, node.state, tuple(c.value for c in node.children)
        )
    return root


def _rule_and_qpow(state: RecState) -> tuple[str, int]:
    rule = rule_select(state)
    if rule == "R1":
        return rule, len(state.v) + len(state.w)
    return rule, _RULE_Q_POWER.get(rule, 0)


def leaf_q_powers(root: TraceNode) -> list[int]:
    """Cumulative (1-Q) denominator power on each root-to-leaf path."""
    out: list[int] = []
    stack = [(root, 0)]
    while stack:
        node, acc = stack.pop()
        acc += node.q_power
        if not node.children:
            out.append(acc)
        else:
            stack.extend((c, acc) for c in reversed(node.children))
    return out


# ----------------------------------------------------------------------
# collapsed engine over Q = 1: permutations drop out entirely


def _q1_expand(v: str, w: str) -> tuple[str, tuple[tuple[str, str], ...]]:
    lv, lw = weight(v), weight(w)
    if lv != lw:
        raise InvariantViolation(f"weights ({lv}, {lw}) differ")
    if not v or not w:
        return "base", ()
    x, y = v[-1], w[-1]
    if x == "1" and y == "1":
        return "strip", ((v[:-1], w[:-1]),)
    if x == "0" and y == "1":
        return "cycle_w", ((v[:-1], "1" + w[:-1]),)
    if x == "1" and y == "0":
        return "cycle_v", (("1" + v[:-1], w[:-1]),)
    if lv == 0:
        return "restart", (("1" + "0" * (len(v) - 1), "1" + "0" * (len(w) - 1)),)
    return "split", (("1" + v[:-1], "1" + w[:-1]), ("0" + v[:-1], "0" + w[:-1]))


def _q1_apply(
    rule: str, v: str, w: str, kid_values: tuple[LaurentPoly, ...]
) -> LaurentPoly:
    if rule == "base":
        return _ONE_PLUS_A ** (len(v) + len(w))
    if rule == "strip":
        return kid_values[0] * _ONE_PLUS_A
    if rule == "split":
        return kid_values[0] + kid_values[1].shifted(et=1)
    return kid_values[0]


def evaluate_q1(
    v: str, w: str, memo: dict[tuple[str, str], LaurentPoly] | None = None
) -> LaurentPoly:
    """Value of the collapsed recursion, a polynomial in A and T."""
    if memo is None:
        memo = {}
    pending = [(v, w)]
    while pending:
        key = pending[-1]
        if key in memo:
            pending.pop()
            continue
        rule, kids = _q1_expand(*key)
        missing = [k for k in kids if k not in memo]
        if missing:
            pending.extend(missing)
            continue
        memo[key] = _q1_apply(rule, *key, tuple(memo[k] for k in kids))
        pending.pop()
    return memo[(v, w)]


# ----------------------------------------------------------------------
# memo table persistence

CACHE_HEADER = "TLH-CACHE 1"


def save_table(memo: MemoTable, path: str) -> None:
    """Write the table as sorted text lines under a versioned header."""
    import os
    import json

    lines = [CACHE_HEADER]
    keys = sorted(
        memo.entries, key=lambda s: (len(s.sigma), s.sigma, s.v, s.w)
    )
    for s in keys:
        val = memo.entries[s]
        lines.append(
            "|".join(
                (
                    str(len(s.sigma)),
                    to_text(s.sigma),
                    s.v,
                    s.w,
                    json.dumps(val.to_json_dict(), separators=(",", ":")),
                )
            )
        )
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_table(path: str) -> MemoTable:
    """Read a persisted table; raises CacheError on any malformation."""
    import json

    memo = MemoTable()
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if header != CACHE_HEADER:
            raise CacheError(f"unsupported cache header {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                l_text, sigma_text, v, w, payload = line.split("|")
                sigma = from_text(sigma_text)
                if len(sigma) != int(l_text):
                    raise ValueError("degree field mismatch")
                state = make_state(sigma, v, w)
                value = StructuredRational.from_json_dict(json.loads(payload))
            except Exception as exc:
                raise CacheError(f"line {lineno}: {exc}") from exc
            memo.entries[state] = value
    return memo
