"""Joint queue-length generating function at visit beginnings.

The state recorded at the instant the server reaches queue i is the vector of
per-class queue lengths (high_1, low_1, ..., high_N, low_N).  Walking one
server cycle backwards expresses the GF at a visit beginning in terms of the
GF one visit earlier: a switch-over factor times the same GF with the visited
queue's two coordinates substituted according to its service discipline

* gated:       both coordinates become the service LST of the total thinned
               arrival exponent (customers are replaced by their per-service
               arrivals, own queue included),
* exhaustive:  both become delay-busy-period LSTs over the other queues'
               exponent (the queue empties; everything arriving meanwhile is
               absorbed into the busy period),
* mixed:       the high coordinate becomes a high-class busy period and the
               low coordinate a completion time, both over the exponent that
               keeps the queue's own gated low-class term.

Iterating whole cycles yields the convergent infinite product (load < 1).
Evaluation works on complements 1 - z and accumulates log factors, so values
stay fully accurate within 1e-12 of the all-ones point where numerical
differentiation operates.
"""

from __future__ import annotations

import math

from .busyperiod import BusyPeriod, MixtureBusyPeriod, _solve_complement
from .errors import NoConvergence
from .model import EXHAUSTIVE, GATED, MIXED, DerivedRates, PollingModel, validate

__all__ = ["GfEvaluator"]

_GATED, _EXHAUSTIVE, _MIXED = 0, 1, 2
_DISC_CODE = {GATED: _GATED, EXHAUSTIVE: _EXHAUSTIVE, MIXED: _MIXED}


class GfEvaluator:
    """Evaluates the visit-beginning GF of a validated polling model.

    All methods are pure; per-call scratch state only, so instances may be
    shared across threads.
    """

    def __init__(self, model: PollingModel, derived: DerivedRates | None = None,
                 tol: float = 1e-15, max_cycles: int = 100_000):
        self.model = model
        self.derived = derived if derived is not None else validate(model)
        self.tol = tol
        self.max_cycles = max_cycles
        n = model.n
        self.n = n
        self._lam = []
        self._disc = []
        self._lstc_h = []
        self._lstc_l = []
        self._busy = []          # mixed: high-class busy; exhaustive: mixture busy
        self._sigma_c = [s.lst_complement for s in model.switchovers]
        for q in model.queues:
            self._lam.extend((q.lambda_high, q.lambda_low))
            code = _DISC_CODE[q.discipline]
            self._disc.append(code)
            self._lstc_h.append(q.service_high.lst_complement)
            self._lstc_l.append(q.service_low.lst_complement)
            if code == _MIXED:
                self._busy.append(BusyPeriod(q.service_high, q.lambda_high))
            elif code == _EXHAUSTIVE:
                self._busy.append(MixtureBusyPeriod(
                    q.service_high, q.lambda_high, q.service_low, q.lambda_low))
            else:
                self._busy.append(None)
        # step order per starting queue: previous queue first, wrapping around
        self._order = [[(i - 1 - k) % n for k in range(n)] for i in range(n)]

    # ------------------------------------------------------------------ core

    def log_value(self, i: int, zeta) -> float:
        """log of the GF at visit beginning of queue i, arguments given as
        complements zeta_k = 1 - z_k (length 2N, each in [0, 1])."""
        n = self.n
        if len(zeta) != 2 * n:
            raise ValueError(f"expected {2 * n} coordinates, got {len(zeta)}")
        lam = self._lam
        disc = self._disc
        lstc_h = self._lstc_h
        lstc_l = self._lstc_l
        busy = self._busy
        sigma_c = self._sigma_c
        order = self._order[i % n]
        tol = self.tol

        w = [float(c) for c in zeta]
        for c in w:
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"complement {c!r} outside [0, 1]")
        lam_tot = 0.0
        for k in range(2 * n):
            lam_tot += lam[k] * w[k]
        if lam_tot == 0.0:
            return 0.0

        terms = []
        warm = [0.0] * n
        log1p = math.log1p
        prev_csum = 0.0
        for _cycle in range(self.max_cycles):
            # refresh the exponent from scratch: the incremental updates below
            # would otherwise leave a rounding-error floor that never decays
            lam_tot = 0.0
            for k in range(2 * n):
                lam_tot += lam[k] * w[k]
            if lam_tot <= 0.0:
                return math.fsum(terms)
            csum = 0.0
            for j in order:
                kh = 2 * j
                lh = lam[kh]
                ll = lam[kh + 1]
                wh = w[kh]
                wl = w[kh + 1]
                t = log1p(-sigma_c[j](lam_tot))
                csum += t
                terms.append(t)
                code = disc[j]
                if code == _MIXED:
                    arg = lam_tot - lh * wh
                    if lh > 0.0:
                        b = busy[j]
                        u = _solve_complement(b._lstc, b.lam, arg, warm[j])
                        warm[j] = u
                    else:
                        u = 0.0
                    nh = u
                    nl = lstc_l[j](arg + lh * u) if ll > 0.0 else 0.0
                elif code == _GATED:
                    nh = lstc_h[j](lam_tot) if lh > 0.0 else 0.0
                    nl = lstc_l[j](lam_tot) if ll > 0.0 else 0.0
                else:  # exhaustive
                    arg = lam_tot - lh * wh - ll * wl
                    b = busy[j]
                    u = _solve_complement(b._lstc, b.lam, arg, warm[j])
                    warm[j] = u
                    e = arg + b.lam * u
                    nh = lstc_h[j](e) if lh > 0.0 else 0.0
                    nl = lstc_l[j](e) if ll > 0.0 else 0.0
                lam_tot += lh * (nh - wh) + ll * (nl - wl)
                w[kh] = nh
                w[kh + 1] = nl
            if lam_tot <= 0.0:
                return math.fsum(terms)
            if -csum <= tol:
                # geometric tail of the remaining cycles
                if prev_csum < 0.0:
                    r = csum / prev_csum
                    if 0.0 < r < 0.999:
                        terms.append(csum * r / (1.0 - r))
                return math.fsum(terms)
            prev_csum = csum
        raise NoConvergence(
            f"visit-beginning GF did not converge within {self.max_cycles} cycles "
            f"(load {self.derived.rho_total:.6g})")

    # ------------------------------------------------------- convenience API

    def value(self, i: int, z) -> float:
        """GF value at z in [0, 1]^(2N)."""
        zeta = [1.0 - float(v) for v in z]
        return math.exp(self.log_value(i, zeta))

    def complement(self, i: int, zeta) -> float:
        """1 - GF, full relative precision for small complements."""
        return -math.expm1(self.log_value(i, zeta))

    def complement_pair(self, i: int, zeta_high: float, zeta_low: float) -> float:
        """1 - GF with only queue i's own coordinates displaced from 1."""
        zeta = [0.0] * (2 * self.n)
        zeta[2 * i] = zeta_high
        zeta[2 * i + 1] = zeta_low
        return -math.expm1(self.log_value(i, zeta))

    def value_pair(self, i: int, z_high: float, z_low: float) -> float:
        return 1.0 - self.complement_pair(i, 1.0 - z_high, 1.0 - z_low)
