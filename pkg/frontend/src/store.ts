import { ApiError, ReviewApi } from './api';
import type { CategoryView, MutationResponse } from './types';

// Client-side board state.  Every score it holds came verbatim from the
// service; the store never computes or adjusts a score itself.
export class BoardStore {
  categories: CategoryView[] = [];
  unassigned: string[] = [];
  offline = false;
  lastError: string | null = null;
  stateHash = '';

  constructor(private api: ReviewApi) {}

  async load(): Promise<void> {
    try {
      const state = await this.api.getState();
      this.categories = state.categories;
      this.unassigned = state.unassigned;
      this.stateHash = state.state_hash;
      this.offline = false;
      this.lastError = null;
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err.message;
      } else {
        this.offline = true;
      }
    }
  }

  category(id: string): CategoryView | undefined {
    return this.categories.find((c) => c.id === id);
  }

  async moveTerm(term: string, fromId: string, toId: string): Promise<boolean> {
    return this.mutate(() => this.api.move(term, fromId, toId));
  }

  async renameLabel(categoryId: string, label: string): Promise<boolean> {
    return this.mutate(() => this.api.rename(categoryId, label));
  }

  async assignTerm(term: string, toId: string): Promise<boolean> {
    return this.mutate(() => this.api.assign(term, toId));
  }

  private async mutate(call: () => Promise<MutationResponse>): Promise<boolean> {
    if (this.offline) {
      this.lastError = 'offline: board is read-only';
      return false;
    }
    try {
      const response = await call();
      for (const updated of response.categories) {
        const at = this.categories.findIndex((c) => c.id === updated.id);
        if (at >= 0) {
          this.categories[at] = updated;
        } else {
          this.categories.push(updated);
        }
      }
      this.unassigned = response.unassigned;
      this.stateHash = response.state_hash;
      this.lastError = null;
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        // A rejected edit leaves the server untouched; re-sync so the board
        // reflects reality (e.g. a term someone else just assigned).
        await this.load();
        this.lastError = err.message;
        return false;
      }
      this.offline = true;
      this.lastError = 'offline: board is read-only';
      return false;
    }
  }
}
