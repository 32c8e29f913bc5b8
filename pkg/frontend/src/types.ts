// Wire types for the gaze service protocol.

export interface RectPx {
  x: number;
  y: number;
  w: number;
  h: number;
}

export type TargetKind = 'link' | 'scroll_up' | 'scroll_down' | 'button';

export interface TargetPayload {
  id: string;
  kind: TargetKind;
  rect: RectPx;
  href?: string;
}

export interface RegistryPayload {
  generation: number;
  scroll: { x: number; y: number };
  targets: TargetPayload[];
}

export interface LogEntry {
  seq: number;
  t_ms: number;
  type:
    | 'smoothed_point'
    | 'blink'
    | 'lookaway_start'
    | 'lookaway_end'
    | 'target_enter'
    | 'target_leave'
    | 'dwell_progress'
    | 'selection'
    | 'scroll';
  x?: number;
  y?: number;
  duration_ms?: number;
  target_id?: string;
  fraction?: number;
  trigger?: 'dwell' | 'blink';
  direction?: 'up' | 'down';
}

export interface PollResponse {
  events: LogEntry[];
  next_seq: number;
}

export interface GazeSampleWire {
  t_ms: number;
  x: number | null;
  y: number | null;
  valid: boolean;
}

export interface SelectorProfile {
  name: string;
  link_selectors: string[];
  scroll_zone_px: number;
}

export interface OverlayConfig {
  serviceUrl: string;
  profile: string;
  pollIntervalMs: number;
  viewportOffset: { dx: number; dy: number };
  mode: 'live' | 'mouse_sim';
  blinkKey: string;
  trackerEndpoint?: string;
}
