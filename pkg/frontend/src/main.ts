import { configFromScriptTag } from './config';
import { Overlay } from './overlay';

declare global {
  interface Window {
    __eyedocOverlay?: Overlay;
  }
}

function boot(): void {
  if (window.__eyedocOverlay) return; // injected twice: keep the first
  const cfg = configFromScriptTag(document);
  if (!cfg) return;
  const overlay = new Overlay(window, cfg);
  window.__eyedocOverlay = overlay;
  overlay.start().catch((err) => {
    console.warn('[eyedoc] overlay failed to start:', err);
  });
  window.addEventListener('pagehide', () => overlay.stop());
}

if (document.readyState === 'loading') {
  document.addEventListener('DOMContentLoaded', boot);
} else {
  boot();
}
