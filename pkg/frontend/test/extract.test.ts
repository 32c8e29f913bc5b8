import { describe, expect, it } from 'vitest';
import { extractTargets } from '../src/extract';
import { builtinProfile } from '../src/profiles';
import { gridMeasure, loadSamplePage } from './helpers';

const OFFSET = { dx: 0, dy: 0 };

describe('target extraction', () => {
  it('finds 12 link targets plus 2 scroll bands on the sample class page', () => {
    loadSamplePage();
    const payload = extractTargets(document, builtinProfile('javadoc'), 1, {
      viewportOffset: OFFSET,
      measure: gridMeasure(),
      viewportSize: { w: 1024, h: 768 },
    });
    const links = payload.targets.filter((t) => t.kind === 'link');
    expect(links).toHaveLength(12);
    expect(payload.targets.filter((t) => t.kind === 'scroll_up')).toHaveLength(1);
    expect(payload.targets.filter((t) => t.kind === 'scroll_down')).toHaveLength(1);
    expect(payload.generation).toBe(1);
    // the unscoped footer link is not a target
    expect(links.some((t) => t.href === 'http://example.com/external')).toBe(false);
  });

  it('produces stable ids across re-extraction of an unchanged page', () => {
    loadSamplePage();
    const first = extractTargets(document, builtinProfile('javadoc'), 1, {
      viewportOffset: OFFSET,
      measure: gridMeasure(),
      viewportSize: { w: 1024, h: 768 },
    });
    const second = extractTargets(document, builtinProfile('javadoc'), 2, {
      viewportOffset: OFFSET,
      measure: gridMeasure(),
      viewportSize: { w: 1024, h: 768 },
    });
    expect(second.generation).toBe(2);
    expect(second.targets.map((t) => t.id)).toEqual(first.targets.map((t) => t.id));
  });

  it('page with no matches still yields the two scroll bands', () => {
    document.open();
    document.write('<html><head></head><body><p>nothing here</p></body></html>');
    document.close();
    const payload = extractTargets(document, builtinProfile('javadoc'), 1, {
      viewportOffset: OFFSET,
      measure: gridMeasure(),
      viewportSize: { w: 800, h: 600 },
    });
    expect(payload.targets.map((t) => t.kind)).toEqual(['scroll_up', 'scroll_down']);
    expect(payload.targets[1].rect).toEqual({ x: 0, y: 540, w: 800, h: 60 });
  });

  it('scrolling shifts link rects but not band rects', () => {
    loadSamplePage();
    const before = extractTargets(document, builtinProfile('javadoc'), 1, {
      viewportOffset: OFFSET,
      measure: gridMeasure(0),
      viewportSize: { w: 1024, h: 768 },
    });
    const after = extractTargets(document, builtinProfile('javadoc'), 2, {
      viewportOffset: OFFSET,
      measure: gridMeasure(100),
      viewportSize: { w: 1024, h: 768 },
    });
    const firstLink = (p: typeof before) => p.targets.find((t) => t.kind === 'link')!;
    expect(firstLink(after).rect.y).toBe(firstLink(before).rect.y - 100);
    const band = (p: typeof before) => p.targets.find((t) => t.kind === 'scroll_up')!;
    expect(band(after).rect).toEqual(band(before).rect);
  });

  it('applies the viewport offset to every rect', () => {
    loadSamplePage();
    const payload = extractTargets(document, builtinProfile('javadoc'), 1, {
      viewportOffset: { dx: 1920, dy: 50 },
      measure: gridMeasure(),
      viewportSize: { w: 1024, h: 768 },
    });
    const link = payload.targets.find((t) => t.kind === 'link')!;
    expect(link.rect.x).toBe(100 + 1920);
    expect(link.rect.y).toBe(100 + 50);
    const up = payload.targets.find((t) => t.kind === 'scroll_up')!;
    expect(up.rect.x).toBe(1920);
  });

  it('skips collapsed elements', () => {
    loadSamplePage();
    const measure = (el: Element) =>
      el.textContent === 'create'
        ? { x: 0, y: 0, w: 0, h: 0 }
        : gridMeasure()(el);
    const payload = extractTargets(document, builtinProfile('javadoc'), 1, {
      viewportOffset: OFFSET,
      measure,
      viewportSize: { w: 1024, h: 768 },
    });
    expect(payload.targets.filter((t) => t.kind === 'link')).toHaveLength(11);
  });
});
