import type { OverlayConfig } from './types';

const DEFAULT_POLL_MS = 33;
const MIN_POLL_MS = 10;

/**
 * Reads configuration from the injected script tag's data attributes:
 * data-eyedoc-service (required), data-eyedoc-profile, plus optional
 * overrides on window.EYEDOC_OVERLAY_CONFIG for the demo/live switches.
 */
export function configFromScriptTag(doc: Document): OverlayConfig | null {
  const tag = doc.querySelector<HTMLScriptElement>('script[data-eyedoc-marker]');
  if (!tag) {
    console.warn('[eyedoc] no injected script tag found; overlay disabled');
    return null;
  }
  const serviceUrl = tag.dataset.eyedocService;
  if (!serviceUrl) {
    console.warn('[eyedoc] script tag lacks data-eyedoc-service; overlay disabled');
    return null;
  }
  const overrides =
    ((globalThis as Record<string, unknown>).EYEDOC_OVERLAY_CONFIG as
      | Partial<OverlayConfig>
      | undefined) ?? {};
  const pollIntervalMs = Math.max(
    MIN_POLL_MS,
    overrides.pollIntervalMs ?? DEFAULT_POLL_MS,
  );
  return {
    serviceUrl: serviceUrl.replace(/\/$/, ''),
    profile: tag.dataset.eyedocProfile ?? 'generic',
    pollIntervalMs,
    viewportOffset: overrides.viewportOffset ?? { dx: 0, dy: 0 },
    mode: overrides.mode ?? 'mouse_sim',
    blinkKey: overrides.blinkKey ?? 'b',
    trackerEndpoint: overrides.trackerEndpoint,
  };
}
