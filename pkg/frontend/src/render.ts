import type { RectPx } from './types';

const STYLE = `
.eyedoc-root { position: fixed; inset: 0; pointer-events: none; z-index: 2147483000; }
.eyedoc-cursor { position: fixed; width: 14px; height: 14px; margin: -7px 0 0 -7px;
  border-radius: 50%; background: rgba(30, 144, 255, 0.55);
  border: 2px solid rgba(30, 144, 255, 0.9); transition: opacity 120ms; }
.eyedoc-ring { position: fixed; width: 44px; height: 44px; margin: -22px 0 0 -22px; }
.eyedoc-ring circle { fill: none; stroke-width: 4; }
.eyedoc-ring .track { stroke: rgba(30, 144, 255, 0.25); }
.eyedoc-ring .fill { stroke: rgba(30, 144, 255, 0.95);
  stroke-linecap: round; transform: rotate(-90deg); transform-origin: center; }
.eyedoc-highlight { position: fixed; border: 2px solid rgba(30, 144, 255, 0.9);
  border-radius: 4px; background: rgba(30, 144, 255, 0.08); }
.eyedoc-highlight.eyedoc-flash { background: rgba(30, 200, 100, 0.35);
  border-color: rgba(30, 200, 100, 1); }
.eyedoc-badge { position: fixed; top: 8px; right: 8px; pointer-events: auto;
  font: 12px/1.4 system-ui, sans-serif; padding: 4px 10px; border-radius: 12px;
  color: #fff; background: #2e8b57; opacity: 0.9; }
.eyedoc-badge[data-state="away"] { background: #888; }
.eyedoc-badge[data-state="disconnected"] { background: #c0392b; }
`;

const RING_RADIUS = 18;
const CIRCUMFERENCE = 2 * Math.PI * RING_RADIUS;

export type BadgeState = 'live' | 'away' | 'disconnected';

/** Owns the overlay DOM: gaze cursor, dwell ring, target highlight, and
 * the status badge. Everything except the badge ignores pointer events,
 * so the page stays fully usable with mouse and keyboard. */
export class OverlayView {
  readonly root: HTMLElement;
  private cursor: HTMLElement;
  private ring: SVGSVGElement;
  private ringFill: SVGCircleElement;
  private highlight: HTMLElement;
  private badge: HTMLElement;
  private doc: Document;

  constructor(doc: Document) {
    this.doc = doc;
    const style = doc.createElement('style');
    style.textContent = STYLE;
    doc.head.appendChild(style);

    this.root = doc.createElement('div');
    this.root.className = 'eyedoc-root';

    this.cursor = doc.createElement('div');
    this.cursor.className = 'eyedoc-cursor';
    this.cursor.style.opacity = '0';

    this.ring = doc.createElementNS('http://www.w3.org/2000/svg', 'svg');
    this.ring.setAttribute('class', 'eyedoc-ring');
    this.ring.setAttribute('viewBox', '0 0 44 44');
    const track = doc.createElementNS('http://www.w3.org/2000/svg', 'circle');
    track.setAttribute('class', 'track');
    track.setAttribute('cx', '22');
    track.setAttribute('cy', '22');
    track.setAttribute('r', String(RING_RADIUS));
    this.ringFill = doc.createElementNS('http://www.w3.org/2000/svg', 'circle');
    this.ringFill.setAttribute('class', 'fill');
    this.ringFill.setAttribute('cx', '22');
    this.ringFill.setAttribute('cy', '22');
    this.ringFill.setAttribute('r', String(RING_RADIUS));
    this.ringFill.setAttribute('stroke-dasharray', String(CIRCUMFERENCE));
    this.ringFill.setAttribute('stroke-dashoffset', String(CIRCUMFERENCE));
    this.ring.appendChild(track);
    this.ring.appendChild(this.ringFill);
    this.ring.style.display = 'none';

    this.highlight = doc.createElement('div');
    this.highlight.className = 'eyedoc-highlight';
    this.highlight.style.display = 'none';

    this.badge = doc.createElement('div');
    this.badge.className = 'eyedoc-badge';
    this.badge.dataset.state = 'live';
    this.badge.textContent = 'gaze: live';

    this.root.append(this.cursor, this.ring, this.highlight, this.badge);
    doc.body.appendChild(this.root);
  }

  moveCursor(x: number, y: number): void {
    this.cursor.style.opacity = '1';
    this.cursor.style.left = `${x}px`;
    this.cursor.style.top = `${y}px`;
    this.ring.style.left = `${x}px`;
    this.ring.style.top = `${y}px`;
  }

  hideCursor(): void {
    this.cursor.style.opacity = '0';
    this.setProgress(0);
  }

  setProgress(fraction: number): void {
    if (fraction <= 0) {
      this.ring.style.display = 'none';
      return;
    }
    this.ring.style.display = '';
    const clamped = Math.min(1, Math.max(0, fraction));
    this.ringFill.setAttribute(
      'stroke-dashoffset',
      String(CIRCUMFERENCE * (1 - clamped)),
    );
  }

  highlightRect(rect: RectPx | null): void {
    if (!rect) {
      this.highlight.style.display = 'none';
      return;
    }
    this.highlight.style.display = '';
    this.highlight.style.left = `${rect.x - 2}px`;
    this.highlight.style.top = `${rect.y - 2}px`;
    this.highlight.style.width = `${rect.w}px`;
    this.highlight.style.height = `${rect.h}px`;
  }

  flashSelection(): void {
    this.highlight.classList.add('eyedoc-flash');
    this.doc.defaultView?.setTimeout(() => {
      this.highlight.classList.remove('eyedoc-flash');
    }, 200);
  }

  setBadge(state: BadgeState, text?: string): void {
    this.badge.dataset.state = state;
    this.badge.textContent = text ?? `gaze: ${state}`;
  }

  get badgeState(): string {
    return this.badge.dataset.state ?? '';
  }

  dispose(): void {
    this.root.remove();
  }
}
