import type { LogEntry, RegistryPayload } from './types';

export type Navigate = (href: string) => void;

const SCROLL_FRACTION = 0.8;

/** Executes selections and scroll commands against the page. */
export class ActionRunner {
  constructor(
    private win: Window,
    private navigate: Navigate = (href) => {
      win.location.href = href;
    },
  ) {}

  /** Link selections navigate in the same tab; selections referencing a
   * target missing from the current generation are dropped with a
   * warning (the page changed under the gaze). */
  executeSelection(ev: LogEntry, registry: RegistryPayload): boolean {
    const target = registry.targets.find((t) => t.id === ev.target_id);
    if (!target) {
      console.warn(`[eyedoc] dropping stale selection for ${ev.target_id}`);
      return false;
    }
    if (target.kind === 'link' && target.href) {
      this.navigate(target.href);
      return true;
    }
    if (target.kind === 'button') {
      console.warn(`[eyedoc] button target ${target.id} has no bound action`);
    }
    return false;
  }

  executeScroll(direction: 'up' | 'down'): number {
    const amount = Math.round(this.win.innerHeight * SCROLL_FRACTION);
    const delta = direction === 'down' ? amount : -amount;
    this.win.scrollBy({ top: delta, behavior: 'smooth' });
    return delta;
  }
}
