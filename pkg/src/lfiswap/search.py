"""Backtracking search for legal valuations over a swap Nmatrix.

Each node (a formula of a finite closure) ranges over a set of snapshots held
as a bitmask over the matrix's domain indices.  Constraints tie a node to its
immediate components:

* ``("op", name, parent, args)``: ``parent`` lies in the multioperation output;
* ``("quant", "forall"|"exists", parent, instances)``: the first coordinate of
  ``parent`` is the meet (join) of the instances' first coordinates.

Domains are kept arc consistent after every choice.  Arc consistency only
removes values that belong to no solution, so branching on nodes in index
order and trying values in domain order yields solutions in lexicographic
order: the first solution is the same one a naive enumeration would find.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator


@dataclass
class Verdict:
    """Outcome of a consequence check.  Truthy exactly when the consequence holds."""

    holds: bool
    countermodel: Any = None
    note: str = ""

    def __bool__(self):
        return self.holds


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class _Wipeout(Exception):
    pass


class ValuationSearch:
    def __init__(self, matrix, domains: list[int], constraints: list[tuple]):
        self.m = matrix
        self.domains = list(domains)
        self.first = [s.z1.bits for s in matrix.domain]
        self.top = matrix.algebra.full_mask
        self.constraints = []
        for c in constraints:
            if c[0] == "quant":
                kind, parent, inst = c[1], c[2], tuple(dict.fromkeys(c[3]))
                if inst == (parent,):
                    continue
                c = ("quant", kind, parent, inst)
            self.constraints.append(c)
        self.watch: list[list[int]] = [[] for _ in domains]
        for ci, c in enumerate(self.constraints):
            for node in self._nodes(c):
                self.watch[node].append(ci)
        self.tables = {}
        for c in self.constraints:
            if c[0] == "op" and c[1] not in self.tables:
                self.tables[c[1]] = matrix.mask_table(c[1])

    @staticmethod
    def _nodes(c):
        if c[0] == "op":
            return set((c[2],) + tuple(c[3]))
        return set((c[2],) + tuple(c[3]))

    # -- revision --------------------------------------------------------

    def _revise(self, c, doms) -> list[int]:
        if c[0] == "op":
            return self._revise_op(c, doms)
        return self._revise_quant(c, doms)

    def _revise_op(self, c, doms):
        _, op, p, args = c
        table = self.tables[op]
        P = doms[p]
        newp = 0
        if len(args) == 1:
            a = args[0]
            newa = 0
            for i in _bits(doms[a]):
                out = table[i] & P
                if out:
                    newp |= out
                    newa |= 1 << i
            return self._commit(doms, ((p, newp), (a, newa)))
        l, r = args
        newl = newr = 0
        if l == r:
            for i in _bits(doms[l]):
                out = table[i][i] & P
                if out:
                    newp |= out
                    newl |= 1 << i
            return self._commit(doms, ((p, newp), (l, newl)))
        R = list(_bits(doms[r]))
        for i in _bits(doms[l]):
            row = table[i]
            for j in R:
                out = row[j] & P
                if out:
                    newp |= out
                    newl |= 1 << i
                    newr |= 1 << j
        return self._commit(doms, ((p, newp), (l, newl), (r, newr)))

    def _revise_quant(self, c, doms):
        _, kind, p, inst = c
        first = self.first
        if kind == "forall":
            unit, comb = self.top, (lambda a, b: a & b)
        else:
            unit, comb = 0, (lambda a, b: a | b)
        vals = [{first[i] for i in _bits(doms[n])} for n in inst]
        k = len(vals)
        pre = [{unit}]
        for s in vals:
            pre.append({comb(a, b) for a in pre[-1] for b in s})
        suf = [{unit}] * (k + 1)
        for idx in range(k - 1, -1, -1):
            suf[idx] = {comb(a, b) for a in suf[idx + 1] for b in vals[idx]}
        newp = 0
        pfirst = set()
        for i in _bits(doms[p]):
            if first[i] in pre[k]:
                newp |= 1 << i
                pfirst.add(first[i])
        updates = [(p, newp)]
        for idx, n in enumerate(inst):
            others = {comb(a, b) for a in pre[idx] for b in suf[idx + 1]}
            keep = 0
            for i in _bits(doms[n]):
                f = first[i]
                if any(comb(o, f) in pfirst for o in others):
                    keep |= 1 << i
            updates.append((n, keep))
        return self._commit(doms, updates)

    @staticmethod
    def _commit(doms, updates):
        changed = []
        for node, new in updates:
            new &= doms[node]
            if new != doms[node]:
                if not new:
                    raise _Wipeout
                doms[node] = new
                changed.append(node)
        return changed

    def _propagate(self, doms, queue) -> bool:
        pending = list(dict.fromkeys(queue))
        queued = set(pending)
        try:
            while pending:
                ci = pending.pop()
                queued.discard(ci)
                for node in self._revise(self.constraints[ci], doms):
                    for cj in self.watch[node]:
                        if cj not in queued:
                            queued.add(cj)
                            pending.append(cj)
        except _Wipeout:
            return False
        return True

    # -- enumeration -----------------------------------------------------

    def solutions(self) -> Iterator[list[int]]:
        """Yield every legal assignment (domain indices per node) in lexicographic order."""
        doms = list(self.domains)
        if any(d == 0 for d in doms):
            return
        if not self._propagate(doms, range(len(self.constraints))):
            return
        yield from self._dfs(doms, 0)

    def _dfs(self, doms, start):
        n = len(doms)
        i = start
        while i < n and doms[i] & (doms[i] - 1) == 0:
            i += 1
        if i == n:
            yield [d.bit_length() - 1 for d in doms]
            return
        for v in _bits(doms[i]):
            child = list(doms)
            child[i] = 1 << v
            if self._propagate(child, self.watch[i]):
                yield from self._dfs(child, i + 1)

    def first_solution(self):
        return next(self.solutions(), None)
