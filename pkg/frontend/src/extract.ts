import { targetId } from './ids';
import type { RectPx, RegistryPayload, SelectorProfile, TargetPayload } from './types';

export type Measure = (el: Element) => RectPx;

const defaultMeasure: Measure = (el) => {
  const r = el.getBoundingClientRect();
  return { x: r.left, y: r.top, w: r.width, h: r.height };
};

export interface ExtractOptions {
  viewportOffset: { dx: number; dy: number };
  measure?: Measure;
  viewportSize?: { w: number; h: number };
}

/**
 * Builds the registry payload for the current page state: one target per
 * matched anchor/button (visible ones only), plus the top/bottom scroll
 * bands. Rects are screen pixels: viewport rect + configured offset.
 * The caller owns the generation counter; re-extract on scroll/resize.
 */
export function extractTargets(
  doc: Document,
  profile: SelectorProfile,
  generation: number,
  opts: ExtractOptions,
): RegistryPayload {
  const measure = opts.measure ?? defaultMeasure;
  const win = doc.defaultView;
  const viewportW = opts.viewportSize?.w ?? win?.innerWidth ?? 1024;
  const viewportH = opts.viewportSize?.h ?? win?.innerHeight ?? 768;
  const { dx, dy } = opts.viewportOffset;

  const seen = new Set<Element>();
  const elements: Element[] = [];
  for (const selector of profile.link_selectors) {
    let matches: NodeListOf<Element>;
    try {
      matches = doc.querySelectorAll(selector);
    } catch {
      console.warn(`[eyedoc] bad selector ${selector}`);
      continue;
    }
    matches.forEach((el) => {
      if (!seen.has(el)) {
        seen.add(el);
        elements.push(el);
      }
    });
  }
  // back to document order regardless of selector order
  elements.sort((a, b) =>
    a.compareDocumentPosition(b) & Node.DOCUMENT_POSITION_FOLLOWING ? -1 : 1,
  );

  const targets: TargetPayload[] = [];
  elements.forEach((el) => {
    const rect = measure(el);
    if (rect.w <= 0 || rect.h <= 0) return; // hidden or collapsed
    const href = el instanceof (doc.defaultView?.HTMLAnchorElement ?? HTMLAnchorElement)
      ? el.getAttribute('href')
      : el.getAttribute('href');
    const key = href ?? (el.textContent ?? '').trim();
    const id = targetId(targets.length, key);
    targets.push({
      id,
      kind: href ? 'link' : 'button',
      rect: { x: rect.x + dx, y: rect.y + dy, w: rect.w, h: rect.h },
      ...(href ? { href } : {}),
    });
  });

  if (targets.length === 0) {
    console.warn('[eyedoc] no navigable targets matched the profile');
  }

  const band = profile.scroll_zone_px;
  targets.push({
    id: 'scroll-up',
    kind: 'scroll_up',
    rect: { x: dx, y: dy, w: viewportW, h: band },
  });
  targets.push({
    id: 'scroll-down',
    kind: 'scroll_down',
    rect: { x: dx, y: dy + viewportH - band, w: viewportW, h: band },
  });

  return {
    generation,
    scroll: { x: win?.scrollX ?? 0, y: win?.scrollY ?? 0 },
    targets,
  };
}
