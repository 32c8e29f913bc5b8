import { describe, expect, it, vi } from 'vitest';
import { ActionRunner } from '../src/actions';
import { GazeServiceClient, ServiceError } from '../src/client';
import { configFromScriptTag } from '../src/config';
import { fnv1a, targetId } from '../src/ids';
import { MouseSimPump } from '../src/mouse';
import type { LogEntry, RegistryPayload } from '../src/types';

describe('ids', () => {
  it('is deterministic and collision-averse on different keys', () => {
    expect(fnv1a('Widget.html')).toBe(fnv1a('Widget.html'));
    expect(fnv1a('Widget.html')).not.toBe(fnv1a('Gadget.html'));
    expect(targetId(3, 'a.html')).toMatch(/^t3-[0-9a-f]{8}$/);
  });
});

describe('config', () => {
  it('reads the injected script tag dataset', () => {
    document.head.innerHTML =
      '<script src="/overlay/overlay.js" data-eyedoc-service="http://127.0.0.1:8700/" ' +
      'data-eyedoc-profile="javadoc" data-eyedoc-marker="1"></script>';
    const cfg = configFromScriptTag(document)!;
    expect(cfg.serviceUrl).toBe('http://127.0.0.1:8700');
    expect(cfg.profile).toBe('javadoc');
    expect(cfg.mode).toBe('mouse_sim');
    expect(cfg.pollIntervalMs).toBe(33);
  });

  it('returns null without an injected tag', () => {
    document.head.innerHTML = '';
    expect(configFromScriptTag(document)).toBeNull();
  });

  it('clamps the poll interval to 10 ms', () => {
    document.head.innerHTML =
      '<script data-eyedoc-service="http://x" data-eyedoc-marker="1"></script>';
    (globalThis as Record<string, unknown>).EYEDOC_OVERLAY_CONFIG = { pollIntervalMs: 1 };
    const cfg = configFromScriptTag(document)!;
    delete (globalThis as Record<string, unknown>).EYEDOC_OVERLAY_CONFIG;
    expect(cfg.pollIntervalMs).toBe(10);
  });
});

const REGISTRY: RegistryPayload = {
  generation: 1,
  scroll: { x: 0, y: 0 },
  targets: [
    { id: 'a', kind: 'link', rect: { x: 0, y: 0, w: 10, h: 10 }, href: 'Widget.html' },
    { id: 'up', kind: 'scroll_up', rect: { x: 0, y: 0, w: 100, h: 60 } },
  ],
};

describe('actions', () => {
  const fakeWin = () =>
    ({ innerHeight: 1000, scrollBy: vi.fn(), location: { href: '' } }) as unknown as Window;

  it('navigates link selections in the same tab', () => {
    const navigate = vi.fn();
    const runner = new ActionRunner(fakeWin(), navigate);
    const ev: LogEntry = { seq: 1, t_ms: 0, type: 'selection', target_id: 'a', trigger: 'dwell' };
    expect(runner.executeSelection(ev, REGISTRY)).toBe(true);
    expect(navigate).toHaveBeenCalledWith('Widget.html');
  });

  it('drops selections for targets missing from the registry', () => {
    const navigate = vi.fn();
    const runner = new ActionRunner(fakeWin(), navigate);
    const ev: LogEntry = { seq: 1, t_ms: 0, type: 'selection', target_id: 'gone', trigger: 'dwell' };
    expect(runner.executeSelection(ev, REGISTRY)).toBe(false);
    expect(navigate).not.toHaveBeenCalled();
  });

  it('scrolls 0.8 viewport heights', () => {
    const win = fakeWin();
    const runner = new ActionRunner(win);
    expect(runner.executeScroll('down')).toBe(800);
    expect(win.scrollBy).toHaveBeenCalledWith({ top: 800, behavior: 'smooth' });
    expect(runner.executeScroll('up')).toBe(-800);
  });
});

describe('service client', () => {
  it('raises typed errors from the protocol error shape', async () => {
    const fetchImpl = vi.fn(async () =>
      new Response(JSON.stringify({ error: 'UnknownSession', detail: 'no session' }), {
        status: 404,
      }),
    );
    const client = new GazeServiceClient('http://svc', fetchImpl as unknown as typeof fetch);
    await expect(client.pollEvents('x', 0)).rejects.toMatchObject({
      code: 'UnknownSession',
      status: 404,
    });
  });

  it('polls with since and unwraps events', async () => {
    const fetchImpl = vi.fn(async (url: RequestInfo | URL) => {
      expect(String(url)).toBe('http://svc/sessions/s1/events?since=7');
      return new Response(JSON.stringify({ events: [], next_seq: 8 }), { status: 200 });
    });
    const client = new GazeServiceClient('http://svc', fetchImpl as unknown as typeof fetch);
    const resp = await client.pollEvents('s1', 7);
    expect(resp.next_seq).toBe(8);
  });
});

describe('mouse-sim pump', () => {
  function pumpWith(post: (s: unknown[]) => Promise<unknown>) {
    let now = 0;
    const pump = new MouseSimPump(window, {
      blinkKey: 'b',
      viewportOffset: { dx: 10, dy: 20 },
      post: post as never,
      now: () => now,
    });
    return { pump, tick: (ms: number) => (now += ms) };
  }

  it('posts pointer positions as valid samples in screen pixels', async () => {
    const posted: unknown[][] = [];
    const { pump, tick } = pumpWith(async (s) => void posted.push(s));
    pump.start();
    document.dispatchEvent(new MouseEvent('pointermove', { clientX: 100, clientY: 50 }));
    tick(16);
    pump.sample();
    tick(17);
    pump.sample();
    await pump.flush();
    pump.stop();
    expect(posted).toHaveLength(1);
    expect(posted[0]).toEqual([
      { t_ms: 16, x: 110, y: 70, valid: true },
      { t_ms: 33, x: 110, y: 70, valid: true },
    ]);
  });

  it('key hold produces an invalid-sample gap', async () => {
    const posted: unknown[][] = [];
    const { pump, tick } = pumpWith(async (s) => void posted.push(s));
    pump.start();
    document.dispatchEvent(new MouseEvent('pointermove', { clientX: 5, clientY: 5 }));
    tick(10);
    pump.sample();
    document.dispatchEvent(new KeyboardEvent('keydown', { key: 'b' }));
    tick(10);
    pump.sample();
    document.dispatchEvent(new KeyboardEvent('keyup', { key: 'b' }));
    tick(10);
    pump.sample();
    await pump.flush();
    pump.stop();
    const batch = posted[0] as Array<{ valid: boolean }>;
    expect(batch.map((s) => s.valid)).toEqual([true, false, true]);
  });

  it('never emits non-increasing timestamps', async () => {
    const posted: Array<Array<{ t_ms: number }>> = [];
    const { pump, tick } = pumpWith(async (s) => void posted.push(s as never));
    pump.start();
    document.dispatchEvent(new MouseEvent('pointermove', { clientX: 1, clientY: 1 }));
    tick(10);
    pump.sample();
    pump.sample(); // same virtual ms: dropped
    tick(5);
    pump.sample();
    await pump.flush();
    pump.stop();
    expect(posted[0].map((s) => s.t_ms)).toEqual([10, 15]);
  });
});
