import { ApiError, ReviewApi } from "./api.js";
import type { Annotation, Progress, Status } from "./types.js";

export interface SessionState {
  items: Annotation[];
  index: number;
  /** token clicked as a pending correction; null means no pending edit */
  selectedToken: number | null;
  notice: string | null;
  loading: boolean;
  filter: Status | null;
  progress: Progress | null;
}

type Listener = (state: SessionState) => void;

/**
 * All review-screen state transitions, kept free of DOM concerns so they
 * are unit-testable.  Annotation state only ever changes to what the
 * server returned; a rejected mutation leaves the item as the server
 * last reported it.
 */
export class ReviewSession {
  private state: SessionState = {
    items: [],
    index: 0,
    selectedToken: null,
    notice: null,
    loading: false,
    filter: null,
    progress: null,
  };
  private listeners: Listener[] = [];

  constructor(
    private readonly api: ReviewApi,
    private readonly reviewer: string,
  ) {}

  onChange(fn: Listener): void {
    this.listeners.push(fn);
  }

  getState(): SessionState {
    return this.state;
  }

  current(): Annotation | null {
    return this.state.items[this.state.index] ?? null;
  }

  private update(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  async load(filter: Status | null = null): Promise<void> {
    this.update({ loading: true, filter, notice: null });
    try {
      const [items, progress] = await Promise.all([
        this.api.queue(filter ?? undefined),
        this.api.progress(),
      ]);
      this.update({
        items,
        progress,
        index: 0,
        selectedToken: null,
        loading: false,
      });
    } catch (err) {
      this.update({ loading: false, notice: describe(err) });
    }
  }

  next(): void {
    if (this.state.index + 1 < this.state.items.length) {
      this.update({ index: this.state.index + 1, selectedToken: null });
    }
  }

  prev(): void {
    if (this.state.index > 0) {
      this.update({ index: this.state.index - 1, selectedToken: null });
    }
  }

  selectToken(tokenIndex: number): void {
    const item = this.current();
    if (!item || tokenIndex < 0 || tokenIndex >= item.tokens.length) return;
    // clicking the current server-side choice cancels the pending edit
    const pending = tokenIndex === item.chosen_index ? null : tokenIndex;
    this.update({ selectedToken: pending });
  }

  async confirm(): Promise<void> {
    const item = this.current();
    if (!item) return;
    await this.mutate(item, {
      action: "confirm",
      reviewer: this.reviewer,
      revision: item.revision,
    });
  }

  async saveCorrection(): Promise<void> {
    const item = this.current();
    const token = this.state.selectedToken;
    if (!item || token === null) return;
    await this.mutate(item, {
      action: "correct",
      reviewer: this.reviewer,
      token_index: token,
      revision: item.revision,
    });
  }

  dismissNotice(): void {
    this.update({ notice: null });
  }

  private async mutate(
    item: Annotation,
    body: Parameters<ReviewApi["decide"]>[1],
  ): Promise<void> {
    try {
      const updated = await this.api.decide(item.context_id, body);
      this.replaceCurrent(updated);
      this.update({ selectedToken: null, notice: null });
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // someone else got there first: show their version, not ours
        const fresh = await this.api.getContext(item.context_id);
        this.replaceCurrent(fresh);
        this.update({
          selectedToken: null,
          notice: `Conflict: ${item.context_id} was changed by another ` +
            `reviewer; showing the latest state.`,
        });
      } else {
        this.update({ notice: describe(err) });
      }
    }
    try {
      this.update({ progress: await this.api.progress() });
    } catch {
      // progress is cosmetic; the item state above is what matters
    }
  }

  private replaceCurrent(updated: Annotation): void {
    const items = this.state.items.slice();
    items[this.state.index] = updated;
    this.update({ items });
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status === 0 ? err.message : `${err.status}: ${err.message}`;
  }
  return String(err);
}
