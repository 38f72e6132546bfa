"""Per-queue transform assembly: cycle, intervisit, visit and waiting times.

Everything is built from the visit-beginning GF plus closed-form service
transforms.  The two queue-i coordinates of the GF read off different periods
depending on the discipline:

* the low coordinate counts arrivals over the previous *cycle* wherever the
  low class is gated (gated, mixed), because gated customers wait exactly one
  full cycle between gate placements;
* the high coordinate counts arrivals over the previous *intervisit* wherever
  the high class is exhaustive (mixed, exhaustive), because the visit ends
  with no high-priority customer left;
* under gated service both coordinates count cycle arrivals, under exhaustive
  service both count intervisit arrivals.

Waiting-time transforms follow the decomposition of a vacation queue: an
M/G/1 factor for the customer's own class (with completion-time services
where high-priority overtaking extends a low-priority customer's effective
service) times a residual term for the periods in which the class is not
served.  All evaluators return complements 1 - f(w) assembled from
complement building blocks so small-w differencing stays accurate.
"""

from __future__ import annotations

import math

from .busyperiod import BusyPeriod
from .errors import UnsupportedEvaluation
from .model import EXHAUSTIVE, GATED, MIXED
from .moments import TransformHandle

__all__ = ["QueueTransforms"]


class QueueTransforms:
    """Transforms of one queue in a validated model.

    Parameters come from the owning analyzer: the shared GfEvaluator, the
    derived rates, and the queue index.
    """

    def __init__(self, gf, i: int):
        self.gf = gf
        self.i = i
        q = gf.model.queues[i]
        d = gf.derived
        self.q = q
        self.disc = q.discipline
        self.lam_h = q.lambda_high
        self.lam_l = q.lambda_low
        self.rho_h = d.rho_high[i]
        self.rho_l = d.rho_low[i]
        self.rho_i = d.rho_queue[i]
        self.ec = d.mean_cycle
        self.ei = d.mean_intervisit[i]
        self.ev = d.mean_visit[i]
        self.svc_h = q.service_high
        self.svc_l = q.service_low
        self._busy_h = BusyPeriod(q.service_high, q.lambda_high)
        # base differencing step: keeps GF arguments well inside [0, 1]
        lam_pos = [x for x in (self.lam_h, self.lam_l) if x > 0.0]
        self.h0 = 1e-3 * min(min(lam_pos), 1.0) / max(1.0, self.ec)

    # ------------------------------------------------------------- helpers

    def _residual(self, complement_at, mean, omega):
        """(R, 1 - R) of the residual time of a period with given complement."""
        r = complement_at / (omega * mean)
        return r, 1.0 - r

    def completion_complement(self, omega: float, warm: float = 0.0) -> float:
        """1 - LST of a low service extended by high busy periods."""
        u = self._busy_h.complement(omega, warm)
        return self.svc_l.lst_complement(omega + self.lam_h * u)

    # ------------------------------------------------------------- periods

    def cycle_complement(self, omega: float) -> float:
        """1 - LST of the cycle time anchored at this queue's visit beginning."""
        if self.disc == EXHAUSTIVE:
            raise UnsupportedEvaluation(
                "cycle transform unavailable for an exhaustive queue: neither "
                "coordinate of the polling-state GF spans a full cycle")
        if omega == 0.0:
            return 0.0
        if self.disc == GATED and self.lam_h > 0.0:
            # both gated coordinates span the same cycle: split the exponent
            # proportionally so each stays within its own rate bound
            tot = self.lam_h + self.lam_l
            if omega > tot:
                raise UnsupportedEvaluation(
                    f"cycle transform evaluable only for omega <= {tot}")
            return self.gf.complement_pair(self.i, omega / tot,
                                           omega / tot if self.lam_l > 0.0 else 0.0)
        if self.lam_l > 0.0:
            if omega > self.lam_l:
                raise UnsupportedEvaluation(
                    f"cycle transform evaluable only for omega <= {self.lam_l}")
            return self.gf.complement_pair(self.i, 0.0, omega / self.lam_l)
        raise UnsupportedEvaluation("cycle transform needs a positive arrival rate")

    def intervisit_complement(self, omega: float) -> float:
        """1 - LST of the intervisit time (visit end to next visit start)."""
        if self.disc == GATED:
            raise UnsupportedEvaluation(
                "intervisit transform unavailable for a gated queue: both "
                "coordinates of the polling-state GF span the full cycle")
        if omega == 0.0:
            return 0.0
        if self.disc == EXHAUSTIVE:
            # both coordinates count intervisit arrivals: split the exponent
            tot = self.lam_h + self.lam_l
            if omega > tot:
                raise UnsupportedEvaluation(
                    f"intervisit transform evaluable only for omega <= {tot}")
            return self.gf.complement_pair(
                self.i,
                omega / tot if self.lam_h > 0.0 else 0.0,
                omega / tot if self.lam_l > 0.0 else 0.0)
        if self.lam_h <= 0.0:
            raise UnsupportedEvaluation("intervisit transform needs lambda_high > 0")
        if omega > self.lam_h:
            raise UnsupportedEvaluation(
                f"intervisit transform evaluable only for omega <= {self.lam_h}")
        return self.gf.complement_pair(self.i, omega / self.lam_h, 0.0)

    def visit_complement(self, omega: float) -> float:
        """1 - LST of the visit time."""
        if omega == 0.0:
            return 0.0
        if self.disc == GATED:
            zh = self.svc_h.lst_complement(omega) if self.lam_h > 0 else 0.0
            zl = self.svc_l.lst_complement(omega) if self.lam_l > 0 else 0.0
        elif self.disc == MIXED:
            zh = self._busy_h.complement(omega) if self.lam_h > 0 else 0.0
            zl = self.completion_complement(omega) if self.lam_l > 0 else 0.0
        else:
            b = self.gf._busy[self.i]
            u = b.complement(omega)
            e = omega + b.lam * u
            zh = self.svc_h.lst_complement(e) if self.lam_h > 0 else 0.0
            zl = self.svc_l.lst_complement(e) if self.lam_l > 0 else 0.0
        return self.gf.complement_pair(self.i, zh, zl)

    # ------------------------------------------------------- waiting times

    def wait_high_complement(self, omega: float) -> float:
        """1 - LST of the high-priority waiting time (mixed or exhaustive).

        Vacation decomposition: M/G/1 factor for the high class, vacations
        being a low service (weight rho_l/(1-rho_h)) or an intervisit period
        (weight (1-rho_i)/(1-rho_h)).
        """
        if self.lam_h <= 0.0:
            raise UnsupportedEvaluation("queue has no high-priority class")
        if self.disc == GATED:
            return self._wait_gated_complement(omega, high=True)
        if omega == 0.0:
            return 0.0
        r_bh, rc_bh = self._residual(self.svc_h.lst_complement(omega),
                                     self.svc_h.mean, omega)
        w_i = (1.0 - self.rho_i) / (1.0 - self.rho_h)
        r_ic = self.intervisit_complement(omega)
        _, rc_i = self._residual(r_ic, self.ei, omega)
        acc = w_i * rc_i
        if self.lam_l > 0.0:
            w_bl = self.rho_l / (1.0 - self.rho_h)
            _, rc_bl = self._residual(self.svc_l.lst_complement(omega),
                                      self.svc_l.mean, omega)
            acc += w_bl * rc_bl
        num = self.rho_h * rc_bh + (1.0 - self.rho_h) * acc
        return num / (1.0 - self.rho_h * r_bh)

    def wait_low_complement(self, omega: float) -> float:
        """1 - LST of the low-priority waiting time (discipline specific)."""
        if self.lam_l <= 0.0:
            raise UnsupportedEvaluation("queue has no low-priority class")
        if self.disc == GATED:
            return self._wait_gated_complement(omega, high=False)
        if omega == 0.0:
            return 0.0
        if omega > self.lam_l:
            raise UnsupportedEvaluation(
                f"low-priority wait evaluable only for omega <= {self.lam_l}")
        u = self._busy_h.complement(omega) if self.lam_h > 0 else 0.0
        bstar_c = self.svc_l.lst_complement(omega + self.lam_h * u)
        rho_star = self.rho_l / (1.0 - self.rho_h)
        e_bstar = self.svc_l.mean / (1.0 - self.rho_h)
        r_bstar = bstar_c / (omega * e_bstar)
        if self.disc == MIXED:
            vc_served = self.gf.complement_pair(self.i, u, bstar_c)
            vc_cycle = self.gf.complement_pair(self.i, u, omega / self.lam_l)
            f = (vc_cycle - vc_served) / (omega * self.ec * (1.0 - rho_star * r_bstar))
        else:  # exhaustive
            vc = self.gf.complement_pair(self.i, u, omega / self.lam_l)
            p = (1.0 - rho_star) / (1.0 - rho_star * r_bstar)
            f = p * (1.0 - self.rho_h) * vc / (omega * self.ei)
        return 1.0 - f

    def _wait_gated_complement(self, omega: float, high: bool) -> float:
        """Gated queue: wait = residual cycle + services scheduled ahead.

        A high customer waits behind the earlier high arrivals of its own
        cycle; a low customer additionally waits behind every high arrival of
        that cycle.
        """
        if omega == 0.0:
            return 0.0
        lam = self.lam_h if high else self.lam_l
        svc = self.svc_h if high else self.svc_l
        zh_served = self.svc_h.lst_complement(omega) if self.lam_h > 0 else 0.0
        if high:
            vc_served = self.gf.complement_pair(self.i, zh_served, 0.0)
            vc_cycle = self._cycle_complement_gated(omega)
        else:
            zl_served = self.svc_l.lst_complement(omega)
            vc_served = self.gf.complement_pair(self.i, zh_served, zl_served)
            if omega > self.lam_l:
                raise UnsupportedEvaluation(
                    f"low-priority wait evaluable only for omega <= {self.lam_l}")
            vc_cycle = self.gf.complement_pair(self.i, zh_served, omega / self.lam_l)
        r_b = svc.lst_complement(omega) / (omega * svc.mean)
        rho_own = lam * svc.mean
        f = (vc_cycle - vc_served) / (omega * self.ec * (1.0 - rho_own * r_b))
        return 1.0 - f

    def _cycle_complement_gated(self, omega: float) -> float:
        return self.cycle_complement(omega)

    # ------------------------------------------------------------ handles

    def cycle_handle(self) -> TransformHandle:
        if self.disc == GATED:
            om = self.lam_l + self.lam_h
        else:
            om = self.lam_l
        return TransformHandle(self.cycle_complement, self.h0, om,
                               name=f"cycle[{self.i}]")

    def intervisit_handle(self) -> TransformHandle:
        om = self.lam_h + self.lam_l if self.disc == EXHAUSTIVE else self.lam_h
        return TransformHandle(self.intervisit_complement, self.h0, om,
                               name=f"intervisit[{self.i}]")

    def visit_handle(self) -> TransformHandle:
        return TransformHandle(self.visit_complement, self.h0, math.inf,
                               name=f"visit[{self.i}]")

    def wait_high_handle(self) -> TransformHandle:
        om = self.lam_h if self.disc != GATED else max(self.lam_h, self.lam_l)
        return TransformHandle(self.wait_high_complement, self.h0, om,
                               name=f"wait_high[{self.i}]")

    def wait_low_handle(self) -> TransformHandle:
        return TransformHandle(self.wait_low_complement, self.h0, self.lam_l,
                               name=f"wait_low[{self.i}]")

    # -------------------------------------------------- queue-length GFs

    def qlen_gf_high(self, z: float) -> float:
        """E[z^(number of high-priority customers present)]."""
        if self.lam_h <= 0.0:
            raise UnsupportedEvaluation("queue has no high-priority class")
        if not 0.0 <= z <= 1.0:
            raise UnsupportedEvaluation("z must lie in [0, 1]")
        if z == 1.0:
            return 1.0
        omega = self.lam_h * (1.0 - z)
        wait = 1.0 - self.wait_high_complement(omega)
        return wait * self.svc_h.lst(omega)

    def qlen_gf_low(self, z: float) -> float:
        """E[z^(number of low-priority customers present)].

        Where high-priority overtaking extends a low customer's effective
        service (mixed, exhaustive) the sojourn uses the completion time.
        """
        if self.lam_l <= 0.0:
            raise UnsupportedEvaluation("queue has no low-priority class")
        if not 0.0 <= z <= 1.0:
            raise UnsupportedEvaluation("z must lie in [0, 1]")
        if z == 1.0:
            return 1.0
        omega = self.lam_l * (1.0 - z)
        wait = 1.0 - self.wait_low_complement(omega)
        if self.disc == GATED:
            svc = self.svc_l.lst(omega)
        else:
            svc = 1.0 - self.completion_complement(omega)
        return wait * svc
