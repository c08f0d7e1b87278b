// Serializes edit round-trips: each component keeps at most one request
// whose result it will still apply. A newer call supersedes older ones,
// whose resolutions (and failures) are dropped instead of clobbering
// fresher state.

export class LatestGate {
  private ticket = 0;

  // Runs fn; resolves with its value only if no newer run() started in the
  // meantime, otherwise resolves null. Errors from superseded runs are
  // swallowed; the latest run's error propagates.
  async run<T>(fn: () => Promise<T>): Promise<T | null> {
    this.ticket += 1;
    const mine = this.ticket;
    try {
      const value = await fn();
      return mine === this.ticket ? value : null;
    } catch (err) {
      if (mine === this.ticket) throw err;
      return null;
    }
  }
}
