// Commit scheduling: slider input is debounced, and of all issued requests
// only the newest one's response is delivered (stale responses and aborted
// requests resolve to null).

export const COMMIT_DEBOUNCE_MS = 150;

export function debounce<Args extends unknown[]>(
  ms: number,
  fn: (...args: Args) => void,
): (...args: Args) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: Args) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, ms);
  };
}

export class LatestWins {
  private controller: AbortController | null = null;
  private ticket = 0;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const issued = ++this.ticket;
    try {
      const result = await task(controller.signal);
      return issued === this.ticket ? result : null;
    } catch (error) {
      if (controller.signal.aborted || (error instanceof Error && error.name === 'AbortError')) {
        return null;
      }
      throw error;
    }
  }
}
