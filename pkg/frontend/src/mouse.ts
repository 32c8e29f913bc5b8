import type { GazeSampleWire } from './types';

const SAMPLE_HZ = 60;
const FLUSH_MS = 50;

export interface MousePumpOptions {
  blinkKey: string;
  viewportOffset: { dx: number; dy: number };
  post: (samples: GazeSampleWire[]) => Promise<unknown>;
  now?: () => number;
}

/**
 * Hardware-free gaze surrogate: samples the pointer at 60 Hz and posts
 * the positions as valid gaze samples. Holding the configured key posts
 * invalid samples (a blink surrogate); the pointer leaving the window
 * does the same, which the pipeline classifies as blink or lookaway by
 * duration. Timestamps are virtual: ms since the pump started.
 */
export class MouseSimPump {
  private pos: { x: number; y: number } | null = null;
  private inside = true;
  private keyHeld = false;
  private epoch = 0;
  private lastT = -1;
  private batch: GazeSampleWire[] = [];
  private sampleTimer: number | undefined;
  private flushTimer: number | undefined;
  private nowFn: () => number;
  private listeners: Array<[string, EventListener]> = [];

  constructor(
    private win: Window,
    private opts: MousePumpOptions,
  ) {
    this.nowFn = opts.now ?? (() => performance.now());
  }

  start(): void {
    this.epoch = this.nowFn();
    const doc = this.win.document;
    const on = (name: string, handler: EventListener) => {
      doc.addEventListener(name, handler, true);
      this.listeners.push([name, handler]);
    };
    on('pointermove', ((ev: PointerEvent) => {
      this.pos = { x: ev.clientX, y: ev.clientY };
      this.inside = true;
    }) as EventListener);
    on('pointerleave', (() => {
      this.inside = false;
    }) as EventListener);
    on('pointerenter', (() => {
      this.inside = true;
    }) as EventListener);
    on('keydown', ((ev: KeyboardEvent) => {
      if (ev.key === this.opts.blinkKey) this.keyHeld = true;
    }) as EventListener);
    on('keyup', ((ev: KeyboardEvent) => {
      if (ev.key === this.opts.blinkKey) this.keyHeld = false;
    }) as EventListener);

    this.sampleTimer = this.win.setInterval(() => this.sample(), 1000 / SAMPLE_HZ);
    this.flushTimer = this.win.setInterval(() => void this.flush(), FLUSH_MS);
  }

  stop(): void {
    if (this.sampleTimer !== undefined) this.win.clearInterval(this.sampleTimer);
    if (this.flushTimer !== undefined) this.win.clearInterval(this.flushTimer);
    const doc = this.win.document;
    for (const [name, handler] of this.listeners) {
      doc.removeEventListener(name, handler, true);
    }
    this.listeners = [];
  }

  /** Captures one sample into the pending batch. */
  sample(): void {
    const t = Math.round(this.nowFn() - this.epoch);
    if (t <= this.lastT) return; // same millisecond: drop, timestamps must advance
    this.lastT = t;
    const blind = this.keyHeld || !this.inside || this.pos === null;
    if (blind) {
      this.batch.push({ t_ms: t, x: null, y: null, valid: false });
    } else {
      const p = this.pos as { x: number; y: number };
      this.batch.push({
        t_ms: t,
        x: p.x + this.opts.viewportOffset.dx,
        y: p.y + this.opts.viewportOffset.dy,
        valid: true,
      });
    }
  }

  async flush(): Promise<void> {
    if (this.batch.length === 0) return;
    const out = this.batch;
    this.batch = [];
    try {
      await this.opts.post(out);
    } catch (err) {
      console.warn('[eyedoc] gaze push failed', err);
    }
  }
}
