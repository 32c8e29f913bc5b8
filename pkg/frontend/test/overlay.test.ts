import { afterEach, describe, expect, it, vi } from 'vitest';
import { Overlay } from '../src/overlay';
import type { LogEntry, OverlayConfig } from '../src/types';

const CFG: OverlayConfig = {
  serviceUrl: 'http://svc',
  profile: 'javadoc',
  pollIntervalMs: 33,
  viewportOffset: { dx: 0, dy: 0 },
  mode: 'mouse_sim',
  blinkKey: 'b',
};

function entry(partial: Partial<LogEntry> & { type: LogEntry['type'] }): LogEntry {
  return { seq: 1, t_ms: 0, ...partial };
}

function makeOverlay(hooks = {}) {
  const overlay = new Overlay(window, CFG, { flashMs: 0, ...hooks });
  overlay.registry = {
    generation: 1,
    scroll: { x: 0, y: 0 },
    targets: [
      { id: 'a', kind: 'link', rect: { x: 50, y: 50, w: 100, h: 20 }, href: 'Widget.html' },
      { id: 'down', kind: 'scroll_down', rect: { x: 0, y: 700, w: 1024, h: 60 } },
    ],
  };
  return overlay;
}

describe('overlay event handling', () => {
  afterEach(() => {
    document.querySelectorAll('.eyedoc-root').forEach((el) => el.remove());
  });

  it('moves the cursor on smoothed points', () => {
    const overlay = makeOverlay();
    overlay.handleEvent(entry({ type: 'smoothed_point', x: 120, y: 90 }));
    const cursor = document.querySelector<HTMLElement>('.eyedoc-cursor')!;
    expect(cursor.style.left).toBe('120px');
    expect(cursor.style.top).toBe('90px');
    expect(cursor.style.opacity).toBe('1');
  });

  it('hides the cursor and flags away on lookaway', () => {
    const overlay = makeOverlay();
    overlay.handleEvent(entry({ type: 'smoothed_point', x: 1, y: 1 }));
    overlay.handleEvent(entry({ type: 'lookaway_start' }));
    const badge = document.querySelector<HTMLElement>('.eyedoc-badge')!;
    expect(badge.dataset.state).toBe('away');
    expect(document.querySelector<HTMLElement>('.eyedoc-cursor')!.style.opacity).toBe('0');
    overlay.handleEvent(entry({ type: 'lookaway_end' }));
    expect(badge.dataset.state).toBe('live');
  });

  it('renders dwell progress for the engaged target', () => {
    const overlay = makeOverlay();
    overlay.handleEvent(entry({ type: 'target_enter', target_id: 'a' }));
    const highlight = document.querySelector<HTMLElement>('.eyedoc-highlight')!;
    expect(highlight.style.display).not.toBe('none');
    overlay.handleEvent(entry({ type: 'dwell_progress', target_id: 'a', fraction: 0.5 }));
    const fill = document.querySelector<SVGCircleElement>('.eyedoc-ring .fill')!;
    const dash = Number(fill.getAttribute('stroke-dasharray'));
    const offset = Number(fill.getAttribute('stroke-dashoffset'));
    expect(offset / dash).toBeCloseTo(0.5, 5);
    overlay.handleEvent(entry({ type: 'target_leave', target_id: 'a' }));
    expect(highlight.style.display).toBe('none');
  });

  it('executes selections through the navigation hook after the flash', async () => {
    const navigate = vi.fn();
    const overlay = makeOverlay({ navigate });
    overlay.handleEvent(entry({ type: 'selection', target_id: 'a', trigger: 'dwell' }));
    await new Promise((r) => setTimeout(r, 5));
    expect(navigate).toHaveBeenCalledWith('Widget.html');
    expect(overlay.selectionsExecuted).toBe(1);
  });

  it('drops stale selections', async () => {
    const navigate = vi.fn();
    const overlay = makeOverlay({ navigate });
    overlay.handleEvent(entry({ type: 'selection', target_id: 'vanished', trigger: 'dwell' }));
    await new Promise((r) => setTimeout(r, 5));
    expect(navigate).not.toHaveBeenCalled();
    expect(overlay.selectionsExecuted).toBe(0);
  });

  it('marks disconnected after three straight poll failures and keeps polling', async () => {
    const failing = vi.fn(async () => {
      throw new Error('refused');
    });
    const overlay = makeOverlay({ fetchImpl: failing });
    overlay.sessionId = 'sid';
    await overlay.pollOnce();
    await overlay.pollOnce();
    expect(document.querySelector<HTMLElement>('.eyedoc-badge')!.dataset.state).toBe('live');
    await overlay.pollOnce();
    expect(document.querySelector<HTMLElement>('.eyedoc-badge')!.dataset.state).toBe(
      'disconnected',
    );
    await overlay.pollOnce(); // still trying
    expect(failing).toHaveBeenCalledTimes(4);
  });
});
