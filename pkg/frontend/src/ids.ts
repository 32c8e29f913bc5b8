/**
 * Stable target ids: document-order index plus an FNV-1a hash of the
 * element's href (or trimmed text for buttons). Re-extracting an
 * unchanged page yields identical ids.
 */
export function fnv1a(text: string): string {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash.toString(16).padStart(8, '0');
}

export function targetId(index: number, key: string): string {
  return `t${index}-${fnv1a(key)}`;
}
