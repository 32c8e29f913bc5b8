import { ActionRunner, Navigate } from './actions';
import { GazeServiceClient } from './client';
import { extractTargets, Measure } from './extract';
import { MouseSimPump } from './mouse';
import { assetBaseFromScript, loadProfile } from './profiles';
import { OverlayView } from './render';
import type { LogEntry, OverlayConfig, RegistryPayload, SelectorProfile } from './types';

const REEXTRACT_DEBOUNCE_MS = 150;
const FLASH_MS = 150;
const MAX_POLL_FAILURES = 3;

export interface OverlayHooks {
  fetchImpl?: typeof fetch;
  navigate?: Navigate;
  measure?: Measure;
  flashMs?: number;
}

/**
 * Wires the page to the gaze service: registers extracted targets,
 * polls the event log, renders gaze state, and executes selections.
 * Polling never stops while the overlay is alive, even when the user
 * looks away, so navigation resumes the moment gaze returns.
 */
export class Overlay {
  readonly client: GazeServiceClient;
  readonly view: OverlayView;
  sessionId: string | null = null;
  registry: RegistryPayload | null = null;
  lastSeq = 0;
  pollFailures = 0;
  selectionsExecuted = 0;

  private actions: ActionRunner;
  private profile: SelectorProfile | null = null;
  private generation = 0;
  private engagedId: string | null = null;
  private away = false;
  private pump: MouseSimPump | null = null;
  private pollTimer: number | undefined;
  private reextractTimer: number | undefined;
  private flashMs: number;
  private onViewportChange = () => this.scheduleReextract();
  private stopped = false;

  constructor(
    private win: Window,
    private cfg: OverlayConfig,
    private hooks: OverlayHooks = {},
  ) {
    this.client = new GazeServiceClient(cfg.serviceUrl, hooks.fetchImpl);
    this.view = new OverlayView(win.document);
    this.actions = new ActionRunner(win, hooks.navigate);
    this.flashMs = hooks.flashMs ?? FLASH_MS;
  }

  async start(): Promise<void> {
    const doc = this.win.document;
    this.profile = await loadProfile(
      this.cfg.profile,
      assetBaseFromScript(doc),
      this.hooks.fetchImpl,
    );
    const screenW = this.win.screen?.width || this.win.innerWidth + this.cfg.viewportOffset.dx;
    const screenH = this.win.screen?.height || this.win.innerHeight + this.cfg.viewportOffset.dy;
    const source =
      this.cfg.mode === 'live'
        ? { kind: 'tracker', endpoint: this.cfg.trackerEndpoint ?? '127.0.0.1:8701' }
        : { kind: 'api' };
    try {
      this.sessionId = await this.client.createSession({
        pipeline: { screen_w: Math.round(screenW), screen_h: Math.round(screenH) },
        interaction: {},
        source,
      });
    } catch (err) {
      this.view.setBadge('disconnected', `gaze: ${(err as Error).message}`);
      throw err;
    }

    await this.registerTargets();
    this.win.addEventListener('scroll', this.onViewportChange, { passive: true });
    this.win.addEventListener('resize', this.onViewportChange);

    if (this.cfg.mode === 'mouse_sim') {
      this.pump = new MouseSimPump(this.win, {
        blinkKey: this.cfg.blinkKey,
        viewportOffset: this.cfg.viewportOffset,
        post: (samples) => this.client.pushGaze(this.sessionId as string, samples),
      });
      this.pump.start();
    }
    this.pollTimer = this.win.setInterval(() => void this.pollOnce(), this.cfg.pollIntervalMs);
  }

  stop(): void {
    this.stopped = true;
    if (this.pollTimer !== undefined) this.win.clearInterval(this.pollTimer);
    if (this.reextractTimer !== undefined) this.win.clearTimeout(this.reextractTimer);
    this.win.removeEventListener('scroll', this.onViewportChange);
    this.win.removeEventListener('resize', this.onViewportChange);
    this.pump?.stop();
    if (this.sessionId) void this.client.deleteSession(this.sessionId).catch(() => undefined);
    this.view.dispose();
  }

  async registerTargets(): Promise<void> {
    if (!this.sessionId || !this.profile) return;
    this.generation += 1;
    const payload = extractTargets(this.win.document, this.profile, this.generation, {
      viewportOffset: this.cfg.viewportOffset,
      measure: this.hooks.measure,
    });
    await this.client.putTargets(this.sessionId, payload);
    this.registry = payload;
  }

  private scheduleReextract(): void {
    if (this.reextractTimer !== undefined) this.win.clearTimeout(this.reextractTimer);
    this.reextractTimer = this.win.setTimeout(() => {
      void this.registerTargets().catch((err) =>
        console.warn('[eyedoc] target re-registration failed', err),
      );
    }, REEXTRACT_DEBOUNCE_MS);
  }

  async pollOnce(): Promise<void> {
    if (!this.sessionId || this.stopped) return;
    let events: LogEntry[];
    try {
      const resp = await this.client.pollEvents(this.sessionId, this.lastSeq);
      events = resp.events;
      this.pollFailures = 0;
      if (this.view.badgeState === 'disconnected') {
        this.view.setBadge(this.away ? 'away' : 'live');
      }
    } catch (err) {
      this.pollFailures += 1;
      if (this.pollFailures >= MAX_POLL_FAILURES) {
        this.view.setBadge('disconnected');
      }
      return; // keep polling on the next tick
    }
    for (const ev of events) {
      this.lastSeq = ev.seq;
      this.handleEvent(ev);
    }
  }

  handleEvent(ev: LogEntry): void {
    switch (ev.type) {
      case 'smoothed_point': {
        const { dx, dy } = this.cfg.viewportOffset;
        this.view.moveCursor((ev.x as number) - dx, (ev.y as number) - dy);
        break;
      }
      case 'lookaway_start':
        this.away = true;
        this.view.hideCursor();
        this.view.setBadge('away');
        break;
      case 'lookaway_end':
        this.away = false;
        this.view.setBadge('live');
        break;
      case 'target_enter': {
        this.engagedId = ev.target_id ?? null;
        const rect = this.rectFor(this.engagedId);
        this.view.highlightRect(rect ? this.toViewport(rect) : null);
        break;
      }
      case 'target_leave':
        if (ev.target_id === this.engagedId) {
          this.engagedId = null;
          this.view.highlightRect(null);
          this.view.setProgress(0);
        }
        break;
      case 'dwell_progress':
        if (ev.target_id === this.engagedId) {
          this.view.setProgress(ev.fraction as number);
        }
        break;
      case 'selection': {
        this.view.flashSelection();
        const registry = this.registry;
        if (registry) {
          this.win.setTimeout(() => {
            if (this.actions.executeSelection(ev, registry)) {
              this.selectionsExecuted += 1;
            }
          }, this.flashMs);
        }
        break;
      }
      case 'scroll':
        this.actions.executeScroll(ev.direction as 'up' | 'down');
        break;
      case 'blink':
        break;
    }
  }

  private rectFor(targetId: string | null) {
    if (!targetId || !this.registry) return null;
    return this.registry.targets.find((t) => t.id === targetId)?.rect ?? null;
  }

  private toViewport(rect: { x: number; y: number; w: number; h: number }) {
    const { dx, dy } = this.cfg.viewportOffset;
    return { x: rect.x - dx, y: rect.y - dy, w: rect.w, h: rect.h };
  }
}
