// In-memory stand-in for the review service used by the unit tests.  It
// mirrors the protocol shapes but keeps scoring trivial (fixed strings), so
// the tests can check that the UI displays whatever the service said.

import type { CategoryView, MutationResponse, StatePayload } from '../src/types';

interface FakeCategory {
  id: string;
  label: string;
  terms: string[];
}

export class FakeService {
  categories: FakeCategory[];
  unassigned: string[];
  revision = 0;

  constructor(categories: FakeCategory[], unassigned: string[]) {
    this.categories = categories.map((c) => ({ ...c, terms: [...c.terms] }));
    this.unassigned = [...unassigned];
  }

  private view(category: FakeCategory): CategoryView {
    const q = 1 + this.revision / 10;
    return {
      id: category.id,
      label: category.label,
      terms: [...category.terms].sort(),
      size: category.terms.length,
      quality: q,
      term_similarity: 0.5,
      label_similarity: 0.25,
      combined_similarity: 0.75,
      avg_label_distance: 1.0,
      display: {
        quality: q.toFixed(4),
        term_similarity: '0.5000',
        label_similarity: '0.2500',
      },
    };
  }

  state(): StatePayload {
    return {
      protocol: 'anea-review/1',
      state_hash: `hash-${this.revision}`,
      categories: this.categories.map((c) => this.view(c)),
      unassigned: [...this.unassigned],
    };
  }

  private respond(touched: FakeCategory[]): MutationResponse {
    this.revision += 1;
    return {
      state_hash: `hash-${this.revision}`,
      categories: touched.map((c) => this.view(c)),
      unassigned: [...this.unassigned],
    };
  }

  move(term: string, fromId: string, toId: string): MutationResponse | { status: number; detail: string } {
    const src = this.categories.find((c) => c.id === fromId);
    const dst = this.categories.find((c) => c.id === toId);
    if (!src || !dst) return { status: 404, detail: 'unknown category id' };
    if (!src.terms.includes(term)) return { status: 404, detail: `term '${term}' not in ${fromId}` };
    src.terms = src.terms.filter((t) => t !== term);
    dst.terms.push(term);
    return this.respond([src, dst]);
  }

  rename(categoryId: string, label: string): MutationResponse | { status: number; detail: string } {
    const cat = this.categories.find((c) => c.id === categoryId);
    if (!cat) return { status: 404, detail: 'unknown category id' };
    if (!label.trim()) return { status: 400, detail: 'label must be non-empty' };
    cat.label = label;
    return this.respond([cat]);
  }

  assign(term: string, toId: string): MutationResponse | { status: number; detail: string } {
    const dst = this.categories.find((c) => c.id === toId);
    if (!dst) return { status: 404, detail: 'unknown category id' };
    if (!this.unassigned.includes(term)) return { status: 404, detail: `term '${term}' is not unassigned` };
    this.unassigned = this.unassigned.filter((t) => t !== term);
    dst.terms.push(term);
    return this.respond([dst]);
  }
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

function isError(value: unknown): value is { status: number; detail: string } {
  return typeof value === 'object' && value !== null && 'status' in value && 'detail' in value;
}

// Installs a fetch stub routing the protocol endpoints into the fake.
export function installFetch(service: FakeService): void {
  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const body = init?.body ? JSON.parse(String(init.body)) : {};
    if (url.endsWith('/api/state')) return json(service.state());
    let result: unknown;
    if (url.endsWith('/api/move')) result = service.move(body.term, body.from_id, body.to_id);
    else if (url.endsWith('/api/rename')) result = service.rename(body.category_id, body.label);
    else if (url.endsWith('/api/assign')) result = service.assign(body.term, body.to_id);
    else return json({ detail: 'not found' }, 404);
    if (isError(result)) return json({ detail: result.detail }, result.status);
    return json(result);
  }) as typeof fetch;
}

export function installOfflineFetch(): void {
  globalThis.fetch = (async () => {
    throw new TypeError('fetch failed');
  }) as typeof fetch;
}
