import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import type { Measure } from '../src/extract';
import type { RectPx } from '../src/types';

export function loadSamplePage(name = 'Widget.html'): void {
  const html = readFileSync(join(__dirname, '..', 'sample-docs', name), 'utf-8');
  // replace the whole document so head/body match the sample page
  document.open();
  document.write(html);
  document.close();
}

/** jsdom has no layout engine: synthesize deterministic rects by
 * document order, one 200x20 row per element starting at y=100. */
export function gridMeasure(scrollY = 0): Measure {
  const cache = new Map<Element, RectPx>();
  let next = 0;
  return (el: Element) => {
    if (!cache.has(el)) {
      cache.set(el, { x: 100, y: 100 + next * 30 - scrollY, w: 200, h: 20 });
      next += 1;
    }
    return cache.get(el) as RectPx;
  };
}

export function until(
  cond: () => boolean,
  timeoutMs = 10_000,
  stepMs = 25,
): Promise<void> {
  const started = Date.now();
  return new Promise((resolve, reject) => {
    const tick = () => {
      if (cond()) return resolve();
      if (Date.now() - started > timeoutMs) return reject(new Error('timeout'));
      setTimeout(tick, stepMs);
    };
    tick();
  });
}
