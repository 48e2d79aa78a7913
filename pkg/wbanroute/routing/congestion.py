import logging
import math
from collections import Counter
from typing import Dict, List, Optional, Tuple

from wbanroute.utility.custom_types import NodeId
from .path_finder import Route

LOGGER = logging.getLogger(__name__)


def update_rci(route: Route, packets_sent_in_window: int, tau: float) -> Route:
    """Set the congestion index of ``route`` to the packets it carried
    in the last window divided by the window length."""
    if tau <= 0:
        raise ValueError("The congestion window must be strictly positive")
    route.rci = packets_sent_in_window / tau
    route.rci_history.append(route.rci)
    return route


def congestion_threshold(mean_rci: float, lam: float) -> float:
    """``lambda * mean_rci``; routes above it are demoted"""
    if not lam > 1:
        raise ValueError(f"lambda must exceed 1, got {lam}")
    if math.isinf(lam):
        return math.inf
    return lam * mean_rci


class CongestionMonitor:
    """Per-window congestion bookkeeping of the registered routes.

    The load of a route is the packet count of its busiest link in
    the window. The mean index is fixed at the first window that
    carried traffic; afterwards, a route above the threshold is
    demoted for one window, provided its source has a distinct
    alternative route. Demotions end instantly at expiry. Routes no
    source holds at the end of a window are forgotten once their
    demotion is over.

    Args:
        tau:
            window length in seconds
        lam:
            threshold multiplier, greater than one
        demotion_factor:
            cost multiplier applied to demoted routes
    """

    def __init__(self, tau: float, lam: float, demotion_factor: float = 4.0) -> None:
        if tau <= 0:
            raise ValueError("The congestion window must be strictly positive")
        self.tau = tau
        self.lam = lam
        self.demotion_factor = demotion_factor
        self.mean_rci: Optional[float] = None
        self._link_counts: Counter = Counter()
        self._known: Dict[Tuple[NodeId, ...], Route] = {}
        self._registered: Dict[NodeId, Tuple[Route, Optional[Route]]] = {}

    def _canonical(self, route: Route) -> Route:
        known = self._known.get(route.key())
        if known is None:
            self._known[route.key()] = route
            return route
        known.cost = route.cost
        return known

    def register(self, src: NodeId, primary: Route, second: Optional[Route]) -> Tuple[Route, Optional[Route]]:
        """record the routes of ``src``; routes seen before keep their
        congestion state"""
        first = self._canonical(primary)
        other = None
        if second is not None and second.key() != primary.key():
            other = self._canonical(second)
        self._registered[src] = (first, other)
        return first, other

    def forget(self, src: NodeId) -> None:
        self._registered.pop(src, None)

    def routes_of(self, src: NodeId) -> Tuple[Optional[Route], Optional[Route]]:
        return self._registered.get(src, (None, None))

    def record_transmission(self, u: NodeId, v: NodeId) -> None:
        self._link_counts[(u, v)] += 1

    def is_demoted(self, route: Route, now: float) -> bool:
        known = self._known.get(route.key(), route)
        return known.is_demoted(now)

    def close_window(self, now: float) -> bool:
        """Update every registered route's index, fix the mean on the
        first loaded window and apply demotions.

        Returns:
            bool:
                whether any demotion started or ended
        """
        changed = False
        routes: List[Route] = []
        seen = set()
        for primary, second in self._registered.values():
            for route in (primary, second):
                if route is not None and route.key() not in seen:
                    seen.add(route.key())
                    routes.append(route)
        for route in routes:
            loads = [self._link_counts.get(link, 0) for link in route.links]
            update_rci(route, max(loads, default=0), self.tau)
        if self.mean_rci is None and routes:
            mean = sum(r.rci for r in routes) / len(routes)
            if mean > 0:
                self.mean_rci = mean
                LOGGER.debug("Mean congestion index fixed at %.4f", mean)
        for route in routes:
            if route.demoted_until is not None and now >= route.demoted_until:
                route.demoted_until = None
                changed = True
        if self.mean_rci is not None:
            threshold = congestion_threshold(self.mean_rci, self.lam)
            for primary, second in self._registered.values():
                for route, alternative in ((primary, second), (second, primary)):
                    if route is None or alternative is None:
                        continue
                    if route.rci > threshold and not route.is_demoted(now):
                        route.demoted_until = now + self.tau
                        changed = True
                        LOGGER.debug(
                            "Route %s demoted until %.2f (rci %.3f > %.3f)",
                            route.hops, route.demoted_until, route.rci, threshold,
                        )
        self._link_counts.clear()
        self._prune(now)
        return changed

    def _prune(self, now: float) -> None:
        """forget routes no source holds any more, unless still demoted"""
        live = {r.key() for pair in self._registered.values() for r in pair if r is not None}
        for key in list(self._known):
            if key not in live and not self._known[key].is_demoted(now):
                del self._known[key]

    def tracked_routes(self) -> List[Tuple[NodeId, ...]]:
        return sorted(self._known)
