"""Girth-based lower bounds on the domination number and the edge bound they use.

All values are double-precision reals compared with ``config.TOLERANCE``.

The girth-12 bound is evaluated as ``max(sqrt(n), sqrt((l - 1) * m / 3))`` with
``l = floor(g / 3)``, which is what the chain ``m <= 3 * E(H) <= 3 * gamma**2 / (l - 1)``
yields. The intermediate form ``sqrt((l - 1) / l * m)`` that appears alongside it in
the literature does not follow from that chain and is not used.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict

from girthguard.graph import Girth, Graph, girth as graph_girth, structure_summary
from girthguard.schemas import BoundEntry, BoundReport
from girthguard.utils import PreconditionError, at_least, ceil_tolerant, is_tight

logger = logging.getLogger(__name__)

STAR_NOTE = "domination number is 1 (star)"
FOREST_NOTE = "lemma1 vacuous: graph is a forest"
EMPTY_NOTE = "empty graph: no bound applies"
GIRTH12_FORM_NOTE = (
    "girth12 evaluated as sqrt((floor(g/3)-1)*m/3); the variant sqrt((l-1)/l*m) "
    "does not follow from m <= 3E(H) and is not used"
)
CONNECTIVITY_NOTE = (
    "girth12 bounds require connectivity here; the disconnected case is not checked"
)


class Lemma1Bound(BaseModel):
    """Edge bounds for a graph of girth at least g: stated n^2/(g-1) and the
    tighter n(n-1)/(g-1) from the counting argument."""

    model_config = ConfigDict(frozen=True)

    stated: float
    derived: float


def bound_general_g7(n: int, m: int) -> float:
    """``(3 + sqrt(8(m - n) + 9)) / 2`` for connected non-star graphs of girth >= 7.

    Raises:
        PreconditionError: if the radicand is negative (impossible when connected).
    """
    radicand = 8 * (m - n) + 9
    if radicand < 0:
        raise PreconditionError(
            f"radicand 8(m-n)+9 = {radicand} is negative; "
            f"a connected graph on {n} vertices has at least {n - 1} edges"
        )
    return (3 + math.sqrt(radicand)) / 2


def bound_mindeg2_g7(n: int, m: int) -> float:
    """``max(sqrt(n), sqrt(2m/3))`` for connected graphs of girth >= 7 and min degree 2."""
    return max(math.sqrt(n), math.sqrt(2 * m / 3))


def lemma1_max_edges(n: int, g: int) -> Lemma1Bound:
    """Maximum edge count of an n-vertex graph with girth at least ``g``."""
    if g < 3:
        raise PreconditionError(f"lemma1 needs g >= 3, got {g}")
    if n < 1:
        raise PreconditionError(f"lemma1 needs n >= 1, got {n}")
    return Lemma1Bound(stated=n * n / (g - 1), derived=n * (n - 1) / (g - 1))


def bound_girth12(n: int, m: int, g: int) -> float:
    """``max(sqrt(n), sqrt((floor(g/3) - 1) * m / 3))`` for girth ``g >= 12``."""
    if g < 12:
        raise PreconditionError(f"girth12 bound needs g >= 12, got {g}")
    l = g // 3
    return max(math.sqrt(n), math.sqrt((l - 1) * m / 3))


def bound_girth12_triangle_free(n: int, m: int, g: int) -> float:
    """``max(sqrt(n), sqrt(4m/3))`` for ``12 <= g <= 14``.

    In that range the quotient graph has girth at least 4, so it is triangle-free and
    has at most gamma^2/4 edges; with m <= 3E(H) this gives m <= 3 gamma^2 / 4.
    """
    if not 12 <= g <= 14:
        raise PreconditionError(f"triangle-free refinement needs 12 <= g <= 14, got {g}")
    return max(math.sqrt(n), math.sqrt(4 * m / 3))


def _gamma_entry(
    applicable: bool, value: Optional[float], gamma: Optional[int], note: str | None = None
) -> BoundEntry:
    if not applicable or value is None:
        return BoundEntry(applicable=False, note=note)
    if gamma is None:
        return BoundEntry(
            applicable=True, value=value, ceil_value=ceil_tolerant(value), note=note
        )
    return BoundEntry(
        applicable=True,
        value=value,
        ceil_value=ceil_tolerant(value),
        slack=gamma - value,
        valid=at_least(gamma, value),
        tight=is_tight(gamma, value),
        note=note,
    )


def _lemma1_entry(g: Graph, girth: Girth) -> BoundEntry:
    if g.n == 0:
        return BoundEntry(applicable=False, note=EMPTY_NOTE)
    if not girth.is_finite:
        return BoundEntry(applicable=False, valid=True, note=FOREST_NOTE)
    bound = lemma1_max_edges(g.n, girth.value)
    return BoundEntry(
        applicable=True,
        value=bound.stated,
        slack=bound.stated - g.m,
        valid=at_least(bound.stated, g.m),
        tight=is_tight(bound.stated, g.m),
        derived=bound.derived,
        note=None if at_least(bound.derived, g.m) else "derived bound n(n-1)/(g-1) fails",
    )


def evaluate_all(g: Graph, gamma: Optional[int] = None) -> BoundReport:
    """Evaluate every bound with its applicability predicate.

    Applicability:
        general_g7: connected, finite girth >= 7, not a star.
        mindeg2_g7: connected, finite girth >= 7, min degree >= 2.
        girth12: connected, min degree >= 2, finite girth >= 12.
        girth12_tf: as girth12 with girth at most 14.
        lemma1: finite girth (vacuous for forests).

    When ``gamma`` is given, each applicable entry carries slack, validity and
    tightness against it.
    """
    summary = structure_summary(g)
    girth = graph_girth(g)
    g_value = girth.value
    notes: list[str] = []

    nonempty = g.n > 0
    if not nonempty:
        notes.append(EMPTY_NOTE)
    if summary.is_star and nonempty:
        notes.append(STAR_NOTE)

    girth7 = nonempty and summary.connected and g_value is not None and g_value >= 7
    general_ok = girth7 and not summary.is_star
    mindeg2_ok = girth7 and summary.min_degree >= 2

    girth12_shape = (
        nonempty and summary.min_degree >= 2 and g_value is not None and g_value >= 12
    )
    girth12_ok = girth12_shape and summary.connected
    if girth12_shape and not summary.connected:
        notes.append(CONNECTIVITY_NOTE)
    tf_ok = girth12_ok and g_value <= 14
    if girth12_ok:
        notes.append(GIRTH12_FORM_NOTE)

    bounds = {
        "general_g7": _gamma_entry(
            general_ok,
            bound_general_g7(g.n, g.m) if general_ok else None,
            gamma,
        ),
        "mindeg2_g7": _gamma_entry(
            mindeg2_ok,
            bound_mindeg2_g7(g.n, g.m) if mindeg2_ok else None,
            gamma,
        ),
        "girth12": _gamma_entry(
            girth12_ok,
            bound_girth12(g.n, g.m, g_value) if girth12_ok else None,
            gamma,
        ),
        "girth12_tf": _gamma_entry(
            tf_ok,
            bound_girth12_triangle_free(g.n, g.m, g_value) if tf_ok else None,
            gamma,
        ),
        "lemma1": _lemma1_entry(g, girth),
    }

    report = BoundReport(
        n=g.n,
        m=g.m,
        girth=girth.to_json(),
        l=g_value // 3 if g_value is not None else None,
        min_degree=summary.min_degree,
        connected=summary.connected,
        is_star=summary.is_star,
        gamma=gamma,
        bounds=bounds,
        notes=notes,
    )
    invalid = report.invalid_bounds()
    if invalid:
        logger.warning(
            "Bound(s) %s violated on graph n=%d m=%d girth=%s gamma=%s",
            ",".join(invalid),
            g.n,
            g.m,
            girth,
            gamma,
        )
    return report
