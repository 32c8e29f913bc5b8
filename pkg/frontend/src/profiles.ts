import type { SelectorProfile } from './types';

// Fallback copies of the shipped profiles.json, used when the asset
// cannot be fetched (e.g. the overlay script is served from file://).
const BUILTIN: Record<string, Omit<SelectorProfile, 'name'>> = {
  javadoc: {
    link_selectors: [
      '.contentContainer a[href]',
      '.header a[href]',
      '.summary a[href]',
      '.bottomNav a[href]',
      '.topNav a[href]',
    ],
    scroll_zone_px: 60,
  },
  doxygen: {
    link_selectors: [
      '.contents a[href]',
      '.memberdecls a[href]',
      '.navpath a[href]',
      '#nav-path a[href]',
    ],
    scroll_zone_px: 60,
  },
  generic: {
    link_selectors: ['a[href]', 'button'],
    scroll_zone_px: 60,
  },
};

export function builtinProfile(name: string): SelectorProfile {
  const base = BUILTIN[name] ?? BUILTIN.generic;
  return { name: name in BUILTIN ? name : 'generic', ...base };
}

/** Loads profiles.json served alongside the overlay script; falls back
 * to the builtin table. */
export async function loadProfile(
  name: string,
  assetBase: string | null,
  fetchImpl: typeof fetch = fetch,
): Promise<SelectorProfile> {
  if (assetBase) {
    try {
      const resp = await fetchImpl(`${assetBase}/profiles.json`);
      if (resp.ok) {
        const table = (await resp.json()) as Record<string, Omit<SelectorProfile, 'name'>>;
        const entry = table[name];
        if (entry && Array.isArray(entry.link_selectors) && entry.link_selectors.length > 0) {
          return { name, ...entry };
        }
      }
    } catch {
      // fall through to builtin
    }
  }
  return builtinProfile(name);
}

/** Base URL for assets shipped next to the overlay script. */
export function assetBaseFromScript(doc: Document): string | null {
  const tag = doc.querySelector<HTMLScriptElement>('script[data-eyedoc-marker]');
  const src = tag?.getAttribute('src');
  if (!src) return null;
  const slash = src.lastIndexOf('/');
  return slash >= 0 ? src.slice(0, slash) : null;
}
