"""Busy-period and completion-time transforms for M/G/1-type workloads.

The busy-period LST pi(omega) initiated by one service B in a queue with
Poisson rate lam solves pi = beta(omega + lam*(1 - pi)).  We iterate the
equivalent complement form u = 1 - pi,

    u <- betac(omega + lam*u),        betac = 1 - beta,

which starts from u = 0 (pi = 1), increases monotonically to the root in
(0, 1], and keeps full relative precision for small omega where 1 - pi is
tiny.  Successive substitution is a global contraction with factor
lam*E(B) < 1, so any warm start in [0, 1] converges.
"""

from __future__ import annotations


from .distributions import Distribution
from .errors import NoConvergence

__all__ = ["BusyPeriod", "busy_period_lst", "completion_time_lst"]

_CAP = 1_000_000
_RTOL = 5e-16


def _solve_complement(lstc, lam: float, omega: float, warm: float) -> float:
    if omega == 0.0:
        return 0.0
    u = warm if 0.0 <= warm <= 1.0 else 0.0
    for _ in range(_CAP):
        u_next = lstc(omega + lam * u)
        if u_next == u or abs(u_next - u) <= _RTOL * u_next:
            return u_next
        u = u_next
    raise NoConvergence(
        f"busy-period fixed point did not converge (lam={lam:.6g}, omega={omega:.6g}); "
        "the queue is too close to critical load")


class BusyPeriod:
    """Busy period of an M/G/1 queue with rate ``lam`` and service ``service``.

    ``complement(omega)`` returns 1 - pi(omega); an optional warm start (a
    complement value from a nearby argument) cuts the iteration count when the
    transform is evaluated along a slowly varying path.
    """

    def __init__(self, service: Distribution, lam: float):
        self.service = service
        self.lam = lam
        self._lstc = service.lst_complement
        self.rho = lam * service.mean

    def complement(self, omega: float, warm: float = 0.0) -> float:
        return _solve_complement(self._lstc, self.lam, omega, warm)

    def lst(self, omega: float) -> float:
        return 1.0 - self.complement(omega)

    @property
    def mean(self) -> float:
        return self.service.mean / (1.0 - self.rho)


class MixtureBusyPeriod(BusyPeriod):
    """Busy period of the combined two-class queue (rate-weighted service mix).

    Used for exhaustively served queues: the time to empty the queue does not
    depend on the order of service, so one busy period with the mixed service
    distribution covers both classes.
    """

    def __init__(self, service_high: Distribution, lam_high: float,
                 service_low: Distribution, lam_low: float):
        lam = lam_high + lam_low
        p_h = lam_high / lam
        p_l = lam_low / lam
        c_h = service_high.lst_complement
        c_l = service_low.lst_complement

        def lstc(s, p_h=p_h, p_l=p_l, c_h=c_h, c_l=c_l):
            return p_h * c_h(s) + p_l * c_l(s)

        self.lam = lam
        self._lstc = lstc
        mean = p_h * service_high.mean + p_l * service_low.mean
        self.rho = lam * mean
        self._mean_service = mean

    @property
    def mean(self) -> float:
        return self._mean_service / (1.0 - self.rho)


def busy_period_lst(service: Distribution, lam: float, omega: float) -> float:
    """pi(omega) in (0, 1]; requires lam * E(B) < 1 and omega >= 0."""
    if omega < 0:
        raise ValueError("omega must be >= 0")
    if lam * service.mean >= 1.0:
        raise ValueError("busy period requires lam * E(B) < 1")
    return BusyPeriod(service, lam).lst(omega)


def completion_time_lst(service_low: Distribution, service_high: Distribution,
                        lam_high: float, omega: float) -> float:
    """LST of a low-priority service extended by high-priority busy periods.

    The extended service absorbs the clearing of every high-priority customer
    arriving while the low-priority one is served; its mean is
    E(B_low) / (1 - lam_high * E(B_high)).
    """
    u = BusyPeriod(service_high, lam_high).complement(omega)
    return service_low.lst(omega + lam_high * u)
