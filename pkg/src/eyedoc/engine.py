"""Selection state machine over registered screen targets.

Consumes pipeline events and produces interaction events. Dwell accrual
follows the on-until-evidence rule: gaze counts as on-target up to the
first off-target point; paused (off-target or blink) time never accrues
and blink time does not consume the grace window either. DwellProgress
and Selection are emitted only on on-target smoothed points, so every
emission is anchored to a real sample. Scroll regions repeat-fire
ScrollCommand every scroll_repeat_ms of accrued time instead of
selecting; they never emit DwellProgress, and neither do engagements in
blink navigation mode (progress describes dwell selection only).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from eyedoc.errors import GenerationSkew, InvalidConfig, NonMonotonicTimestamp, SchemaError
from eyedoc.events import (
    Blink,
    DwellProgress,
    FixationEnd,
    FixationStart,
    GazeEvent,
    InteractionEvent,
    LookawayEnd,
    LookawayStart,
    ScrollCommand,
    Selection,
    SmoothedPoint,
    TargetEnter,
    TargetLeave,
)

TARGET_KINDS = frozenset({"link", "scroll_up", "scroll_down", "button"})
SCROLL_KINDS = frozenset({"scroll_up", "scroll_down"})


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class TargetRegion:
    id: str
    kind: str
    rect: Rect
    href: str | None = None

    @property
    def area(self) -> float:
        return self.rect.w * self.rect.h


@dataclass
class TargetRegistry:
    generation: int
    targets: list[TargetRegion] = field(default_factory=list)
    scroll_x: float = 0.0
    scroll_y: float = 0.0

    def __post_init__(self):
        self._by_id = {t.id: t for t in self.targets}

    def get(self, target_id: str) -> TargetRegion | None:
        return self._by_id.get(target_id)

    @classmethod
    def empty(cls) -> "TargetRegistry":
        return cls(generation=0)


def registry_from_payload(payload: dict) -> TargetRegistry:
    """Validates and builds a registry from its wire form. SchemaError on
    malformed payloads; generation consistency is the engine's job."""
    if not isinstance(payload, dict):
        raise SchemaError("registry payload must be an object")
    generation = payload.get("generation")
    if not isinstance(generation, int) or isinstance(generation, bool) or generation < 1:
        raise SchemaError("generation must be a positive integer")
    scroll = payload.get("scroll", {"x": 0, "y": 0})
    if not isinstance(scroll, dict):
        raise SchemaError("scroll must be an object")
    try:
        scroll_x = float(scroll.get("x", 0))
        scroll_y = float(scroll.get("y", 0))
    except (TypeError, ValueError) as exc:
        raise SchemaError("scroll offsets must be numbers") from exc
    raw_targets = payload.get("targets")
    if not isinstance(raw_targets, list):
        raise SchemaError("targets must be a list")

    targets: list[TargetRegion] = []
    seen: set[str] = set()
    for i, raw in enumerate(raw_targets):
        if not isinstance(raw, dict):
            raise SchemaError(f"target #{i} must be an object")
        target_id = raw.get("id")
        if not isinstance(target_id, str) or not target_id:
            raise SchemaError(f"target #{i}: id must be a non-empty string")
        if target_id in seen:
            raise SchemaError(f"duplicate target id {target_id!r}")
        seen.add(target_id)
        kind = raw.get("kind")
        if kind not in TARGET_KINDS:
            raise SchemaError(f"target {target_id!r}: unknown kind {kind!r}")
        rect = raw.get("rect")
        if not isinstance(rect, dict):
            raise SchemaError(f"target {target_id!r}: rect must be an object")
        try:
            r = Rect(float(rect["x"]), float(rect["y"]), float(rect["w"]), float(rect["h"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"target {target_id!r}: rect needs numeric x, y, w, h") from exc
        if r.w <= 0 or r.h <= 0:
            raise SchemaError(f"target {target_id!r}: rect must have positive size")
        href = raw.get("href")
        if href is not None and not isinstance(href, str):
            raise SchemaError(f"target {target_id!r}: href must be a string")
        targets.append(TargetRegion(id=target_id, kind=kind, rect=r, href=href))
    return TargetRegistry(
        generation=generation, targets=targets, scroll_x=scroll_x, scroll_y=scroll_y
    )


def bounds_warnings(
    registry: TargetRegistry, screen_w: int, screen_h: int, margin_px: float
) -> list[str]:
    """Soft check: targets outside the margin-expanded screen are suspicious
    but accepted."""
    warnings = []
    for t in registry.targets:
        r = t.rect
        if (
            r.x < -margin_px
            or r.y < -margin_px
            or r.x + r.w > screen_w + margin_px
            or r.y + r.h > screen_h + margin_px
        ):
            warnings.append(f"target {t.id!r} extends outside screen bounds")
    return warnings


@dataclass(frozen=True)
class InteractionConfig:
    dwell_ms: int = 800
    off_target_grace_ms: int = 150
    margin_px: float = 8.0
    navigation_style: str = "dwell"
    scroll_repeat_ms: int = 400

    def __post_init__(self):
        if self.dwell_ms <= 0:
            raise InvalidConfig("dwell_ms must be positive")
        if not 0 <= self.off_target_grace_ms < self.dwell_ms:
            raise InvalidConfig("off_target_grace_ms must be in [0, dwell_ms)")
        if self.margin_px < 0:
            raise InvalidConfig("margin_px must be non-negative")
        if self.navigation_style not in ("dwell", "blink"):
            raise InvalidConfig("navigation_style must be 'dwell' or 'blink'")
        if self.scroll_repeat_ms <= 0:
            raise InvalidConfig("scroll_repeat_ms must be positive")


def hit_test(x: float, y: float, registry: TargetRegistry, margin_px: float) -> str | None:
    """Smallest (by unexpanded area, then id) target whose margin-expanded
    rect contains the point."""
    best_key = None
    best_id = None
    for t in registry.targets:
        r = t.rect
        if (
            r.x - margin_px <= x <= r.x + r.w + margin_px
            and r.y - margin_px <= y <= r.y + r.h + margin_px
        ):
            key = (t.area, t.id)
            if best_key is None or key < best_key:
                best_key = key
                best_id = t.id
    return best_id


@dataclass
class _Engagement:
    target: TargetRegion
    entered_ms: int
    last_on_ms: int
    accrued_ms: int = 0
    off_since_ms: int | None = None
    selected: bool = False
    scrolls_fired: int = 0


class InteractionEngine:
    """Single-owner state machine; one instance per session, driven
    sequentially with non-decreasing event timestamps."""

    def __init__(self, cfg: InteractionConfig, registry: TargetRegistry | None = None):
        self.cfg = cfg
        self.registry = registry if registry is not None else TargetRegistry.empty()
        self._engagement: _Engagement | None = None
        self._clock = 0

    @property
    def engaged_target_id(self) -> str | None:
        return self._engagement.target.id if self._engagement else None

    def step(self, ev: GazeEvent) -> list[InteractionEvent]:
        if isinstance(ev, (FixationStart, FixationEnd)):
            return []  # dwell is driven by smoothed points, not fixations
        t = ev.order_ms
        if t < self._clock:
            raise NonMonotonicTimestamp(
                f"event at {t} ms is behind the engine clock ({self._clock} ms)"
            )
        self._clock = t

        out: list[InteractionEvent] = []
        self._expire_grace(t, out)
        if isinstance(ev, SmoothedPoint):
            self._on_point(ev, out)
        elif isinstance(ev, Blink):
            self._on_blink(ev, out)
        elif isinstance(ev, LookawayStart):
            self._drop_engagement(ev.t_ms, out)
        elif isinstance(ev, LookawayEnd):
            pass
        return out

    def replace_targets(self, registry: TargetRegistry) -> list[InteractionEvent]:
        """Swaps the registry. Any engagement resets: dwell never carries
        across generations."""
        if registry.generation != self.registry.generation + 1:
            raise GenerationSkew(
                f"expected generation {self.registry.generation + 1}, "
                f"got {registry.generation}"
            )
        out: list[InteractionEvent] = []
        self._drop_engagement(self._clock, out)
        self.registry = registry
        return out

    def set_config(self, cfg: InteractionConfig) -> list[InteractionEvent]:
        """Applies a new config; takes effect on the next step. Any active
        engagement resets."""
        out: list[InteractionEvent] = []
        self._drop_engagement(self._clock, out)
        self.cfg = cfg
        return out

    def _drop_engagement(self, t_ms: int, out: list[InteractionEvent]) -> None:
        if self._engagement is not None:
            out.append(TargetLeave(t_ms=t_ms, target_id=self._engagement.target.id))
            self._engagement = None

    def _expire_grace(self, now_ms: int, out: list[InteractionEvent]) -> None:
        eng = self._engagement
        if eng is None or eng.off_since_ms is None:
            return
        deadline = eng.off_since_ms + self.cfg.off_target_grace_ms
        if now_ms > deadline:
            out.append(TargetLeave(t_ms=deadline, target_id=eng.target.id))
            self._engagement = None

    def _on_point(self, p: SmoothedPoint, out: list[InteractionEvent]) -> None:
        hit = hit_test(p.x, p.y, self.registry, self.cfg.margin_px)
        eng = self._engagement
        if eng is not None:
            if hit == eng.target.id:
                if eng.off_since_ms is None:
                    eng.accrued_ms += p.t_ms - eng.last_on_ms
                else:
                    eng.off_since_ms = None  # resumed within grace; pause does not accrue
                eng.last_on_ms = p.t_ms
                self._emit_engaged(p.t_ms, eng, out)
            elif eng.off_since_ms is None:
                eng.accrued_ms += p.t_ms - eng.last_on_ms
                eng.last_on_ms = p.t_ms
                eng.off_since_ms = p.t_ms
            return
        if hit is not None:
            target = self.registry.get(hit)
            eng = _Engagement(target=target, entered_ms=p.t_ms, last_on_ms=p.t_ms)
            self._engagement = eng
            out.append(TargetEnter(t_ms=p.t_ms, target_id=hit))
            self._emit_engaged(p.t_ms, eng, out)

    def _emit_engaged(self, t_ms: int, eng: _Engagement, out: list[InteractionEvent]) -> None:
        kind = eng.target.kind
        if kind in SCROLL_KINDS:
            direction = "up" if kind == "scroll_up" else "down"
            due = eng.accrued_ms // self.cfg.scroll_repeat_ms
            while eng.scrolls_fired < due:
                eng.scrolls_fired += 1
                out.append(ScrollCommand(t_ms=t_ms, direction=direction))
            return
        if self.cfg.navigation_style != "dwell" or eng.selected:
            return
        fraction = min(1.0, eng.accrued_ms / self.cfg.dwell_ms)
        out.append(DwellProgress(t_ms=t_ms, target_id=eng.target.id, fraction=fraction))
        if eng.accrued_ms >= self.cfg.dwell_ms:
            eng.selected = True
            out.append(Selection(t_ms=t_ms, target_id=eng.target.id, trigger="dwell"))

    def _on_blink(self, b: Blink, out: list[InteractionEvent]) -> None:
        eng = self._engagement
        if eng is None:
            return
        if (
            self.cfg.navigation_style == "blink"
            and not eng.selected
            and eng.target.kind not in SCROLL_KINDS
        ):
            eng.selected = True
            out.append(Selection(t_ms=b.t_start_ms, target_id=eng.target.id, trigger="blink"))
        # Eyes-closed time is neutral: it neither accrues dwell nor burns grace.
        if eng.off_since_ms is None:
            eng.accrued_ms += b.t_start_ms - eng.last_on_ms
            eng.last_on_ms = b.t_end_ms
        else:
            eng.off_since_ms += b.duration_ms
