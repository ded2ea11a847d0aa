"""Plane-sweep engine for x-monotone arcs.

One Bentley-Ottmann-style sweep serves two consumers:

* crossing discovery for arrangement construction (every pairwise
  intersection, reported once per pair and point), and
* the red-blue mode used for face-boundary queries: red arcs are the
  edges of a subdivision (pairwise non-crossing), blue arcs may cross
  each other freely; blue-blue crossings are handled as status order
  swaps but never reported, and a callback may delete blue arcs mid-sweep
  as soon as they are reported.

Events are keyed by snapped points: a registry merges points that agree
within the float tolerance, which keeps event identities stable.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left, insort
from typing import Callable, Optional, Sequence

from .errors import DegenerateOverlap, DegeneracyDetected
from .geometry import Arc, arc_intersections
from .numeric import EPS, Point, num_cmp


class PointRegistry:
    """Canonical representatives for nearly-equal points."""

    def __init__(self, tol: float = EPS):
        self.tol = tol
        self._xs: list = []  # sorted representative x values
        self._cols: dict = {}  # x -> sorted list of (y, Point)

    def snap(self, p: Point) -> Point:
        tol = self.tol
        x = p.x
        i = bisect_left(self._xs, x - tol) if tol else bisect_left(self._xs, x)
        xrep = None
        while i < len(self._xs):
            cand = self._xs[i]
            if cand > x + tol:
                break
            if abs(cand - x) <= tol if tol else cand == x:
                xrep = cand
                break
            i += 1
        if xrep is None:
            insort(self._xs, x)
            self._cols[x] = []
            xrep = x
        col = self._cols[xrep]
        y = p.y
        j = bisect_left(col, (y - tol,)) if tol else bisect_left(col, (y,))
        while j < len(col):
            cy, cp = col[j]
            if cy > y + tol:
                break
            if (abs(cy - y) <= tol) if tol else cy == y:
                return cp
            j += 1
        rep = Point(xrep, y)
        insort(col, (y, rep))
        return rep

    def points(self):
        for x in self._xs:
            for _, p in self._cols[x]:
                yield p


class SweepResult:
    def __init__(self):
        self.registry: Optional[PointRegistry] = None
        self.cuts: dict = {}  # id(arc) -> list of interior split points
        self.purple: list = []  # (blue_index, red_index, point)


class _Sweep:
    """Shared sweep core.  Arcs are tagged red/blue via `red_ids` (a set of
    arc indices); with red_ids None, every crossing is collected as a cut."""

    def __init__(
        self,
        arcs: Sequence[Arc],
        tol: float,
        red_count: int = 0,
        on_purple: Optional[Callable] = None,
        skip_same_source: bool = False,
    ):
        self.arcs = list(arcs)
        self.tol = tol
        self.red_count = red_count  # arcs[0:red_count] are red
        self.on_purple = on_purple
        self.skip_same_source = skip_same_source
        self.reg = PointRegistry(tol)
        self.result = SweepResult()
        self.result.registry = self.reg
        self.dead = set()  # arc indices deleted mid-sweep
        self.status: list = []  # arc indices, bottom to top
        self.pos: dict = {}  # arc index -> status position
        self.events: dict = {}  # point -> [starts, ends, cross-set]
        self.heap: list = []
        self._seq = 0
        self.pair_done: dict = {}  # (i, j) -> list of points
        self.reported = set()  # (blue, red, point)

    # -- event bookkeeping --------------------------------------------------

    def _event(self, p: Point):
        rec = self.events.get(p)
        if rec is None:
            rec = [[], [], set()]
            self.events[p] = rec
            self._seq += 1
            heapq.heappush(self.heap, (p.x, p.y, self._seq, p))
        return rec

    def _pair_points(self, i: int, j: int):
        key = (i, j) if i < j else (j, i)
        pts = self.pair_done.get(key)
        if pts is None:
            a, b = self.arcs[key[0]], self.arcs[key[1]]
            if self.skip_same_source and a.source is not None and a.source == b.source:
                pts = []
            else:
                try:
                    pts = [self.reg.snap(q) for q in arc_intersections(a, b)]
                except DegenerateOverlap as exc:
                    raise DegeneracyDetected(str(exc)) from exc
            self.pair_done[key] = pts
        return pts

    def _schedule_pair(self, i: int, j: int, after: Point):
        if i in self.dead or j in self.dead:
            return
        ri = i < self.red_count
        rj = j < self.red_count
        if ri and rj:
            return  # red arcs may share endpoints but never cross
        for q in self._pair_points(i, j):
            if (q.x, q.y) > (after.x, after.y):
                self._event(q)[2].add(i)
                self._event(q)[2].add(j)

    # -- status helpers -----------------------------------------------------

    def _reindex(self):
        self.pos = {ai: k for k, ai in enumerate(self.status)}

    def _y_cmp(self, ai: int, p: Point) -> int:
        return num_cmp(self.arcs[ai].y_at(p.x), p.y, self.tol)

    def _find_insert_pos(self, p: Point) -> int:
        lo, hi = 0, len(self.status)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._y_cmp(self.status[mid], p) < 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _after_key(self, ai: int, p: Point):
        arc = self.arcs[ai]
        at_start = _near(p, arc.p0, self.tol)
        slope = arc.slope_at(arc.p0 if at_start else p, at_start)
        return (slope, arc.curvature(), arc.source if arc.source is not None else -1, ai)

    # -- main loop ----------------------------------------------------------

    def run(self) -> SweepResult:
        starts_at: dict = {}
        for idx, arc in enumerate(self.arcs):
            p0 = self.reg.snap(arc.p0)
            p1 = self.reg.snap(arc.p1)
            self._event(p0)[0].append(idx)
            self._event(p1)[1].append(idx)
        while self.heap:
            x, y, _, p = heapq.heappop(self.heap)
            rec = self.events.pop(p, None)
            if rec is None:
                continue  # already handled via a merged representative
            self._process(p, rec)
        return self.result

    def _process(self, p: Point, rec):
        starts, ends, crossers = rec
        starting = [i for i in starts if i not in self.dead]
        ending = {i for i in ends if i not in self.dead}
        crossing = [
            i
            for i in crossers
            if i not in self.dead and i not in ending and i not in starts
        ]
        # defensive capture: any status arc passing through p joins the batch
        ipos = self._find_insert_pos(p)
        lo = ipos
        while lo - 1 >= 0 and self._y_cmp(self.status[lo - 1], p) == 0:
            lo -= 1
        hi = ipos
        while hi < len(self.status) and self._y_cmp(self.status[hi], p) == 0:
            hi += 1
        through = set(self.status[lo:hi])
        for i in sorted(through - ending - set(crossing)):
            if i not in self.dead:
                crossing.append(i)

        touched = sorted(set(starting) | ending | set(crossing))
        self._report(p, touched)
        touched = [i for i in touched if i not in self.dead]

        # record cuts: every touched arc for which p is interior
        for i in touched:
            arc = self.arcs[i]
            if i in ending or i in starts:
                continue
            self.result.cuts.setdefault(i, []).append(p)

        # remove everything touching p from the status; only arcs that were
        # actually present may be reinserted (an event point snapped onto an
        # arc's endpoint must not resurrect the arc after its end event)
        present = {i for i in (set(crossing) | ending) if i in self.pos}
        if present:
            for i in sorted((self.pos[i] for i in present), reverse=True):
                self.status.pop(i)
            self._reindex()

        ipos = self._find_insert_pos(p)
        block = [i for i in crossing if i in present and i not in self.dead] + [
            i for i in starting if i not in self.dead and i not in self.pos
        ]
        block.sort(key=lambda ai: self._after_key(ai, p))
        if block:
            self.status[ipos:ipos] = block
            self._reindex()
            below = self.status[ipos - 1] if ipos > 0 else None
            above_idx = ipos + len(block)
            above = self.status[above_idx] if above_idx < len(self.status) else None
            if below is not None:
                self._schedule_pair(below, block[0], p)
            if above is not None:
                self._schedule_pair(block[-1], above, p)
            for k in range(len(block) - 1):
                self._schedule_pair(block[k], block[k + 1], p)
        else:
            below = self.status[ipos - 1] if ipos > 0 else None
            above = self.status[ipos] if ipos < len(self.status) else None
            if below is not None and above is not None:
                self._schedule_pair(below, above, p)

    def _report(self, p: Point, touched):
        if self.red_count == 0:
            return
        reds = [i for i in touched if i < self.red_count]
        blues = [i for i in touched if i >= self.red_count]
        if not reds or not blues:
            return
        for bi in blues:
            if bi in self.dead:
                continue
            barc = self.arcs[bi]
            if not barc.point_on(p, max(self.tol, EPS)):
                continue
            b_end = _near(p, barc.p0, self.tol) or _near(p, barc.p1, self.tol)
            for ri in reds:
                rarc = self.arcs[ri]
                if self.skip_same_source and rarc.source is not None and rarc.source == barc.source:
                    continue
                if not rarc.point_on(p, max(self.tol, EPS)):
                    continue
                r_end = _near(p, rarc.p0, self.tol) or _near(p, rarc.p1, self.tol)
                if b_end and r_end:
                    continue  # shared endpoint, not an intersection
                key = (bi, ri, p)
                if key in self.reported:
                    continue
                self.reported.add(key)
                self.result.purple.append((bi - self.red_count, ri, p))
                if self.on_purple is not None:
                    verdict = self.on_purple(bi - self.red_count, ri, p)
                    if verdict:
                        kills = (
                            {bi}
                            if verdict is True
                            else {k + self.red_count for k in verdict}
                        )
                        for k in kills:
                            self._kill(k, p)
                if bi in self.dead:
                    break

    def _kill(self, arc_index: int, current: Point):
        """Delete a blue arc mid-sweep, as if it ended at the current point."""
        self.dead.add(arc_index)
        if arc_index in self.pos:
            k = self.pos[arc_index]
            self.status.pop(k)
            self._reindex()
            below = self.status[k - 1] if k > 0 else None
            above = self.status[k] if k < len(self.status) else None
            if below is not None and above is not None:
                self._schedule_pair(below, above, current)


def _near(p: Point, q: Point, tol: float) -> bool:
    if tol:
        return abs(p.x - q.x) <= tol and abs(p.y - q.y) <= tol
    return p == q


def find_all_crossings(arcs: Sequence[Arc], tol: float) -> SweepResult:
    """All pairwise crossings; result.cuts maps arc index -> interior points."""
    sweep = _Sweep(arcs, tol)
    return sweep.run()


def red_blue_sweep(
    red: Sequence[Arc],
    blue: Sequence[Arc],
    tol: float,
    on_purple: Optional[Callable] = None,
) -> list:
    """Red x blue crossings as (blue_index, red_index, point), event order.

    Blue x blue crossings swap the status order but are never reported.
    `on_purple(blue_index, red_index, point)` may return True to delete the
    reported blue arc, or an iterable of blue indices to delete.
    """
    arcs = list(red) + list(blue)
    sweep = _Sweep(
        arcs,
        tol,
        red_count=len(red),
        on_purple=on_purple,
        skip_same_source=True,
    )
    return sweep.run().purple
