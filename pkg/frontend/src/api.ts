import type { EditLogEntry, ExportPayload, MutationResponse, StatePayload } from './types';

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === 'string') detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

function post(body: unknown): RequestInit {
  return {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  };
}

export class ReviewApi {
  constructor(private base: string = '') {}

  getState(): Promise<StatePayload> {
    return request(`${this.base}/api/state`);
  }

  move(term: string, fromId: string, toId: string): Promise<MutationResponse> {
    return request(`${this.base}/api/move`, post({ term, from_id: fromId, to_id: toId }));
  }

  rename(categoryId: string, label: string): Promise<MutationResponse> {
    return request(`${this.base}/api/rename`, post({ category_id: categoryId, label }));
  }

  assign(term: string, toId: string): Promise<MutationResponse> {
    return request(`${this.base}/api/assign`, post({ term, to_id: toId }));
  }

  exportState(): Promise<ExportPayload> {
    return request(`${this.base}/api/export`);
  }

  replay(editLog: EditLogEntry[]): Promise<{ state_hash: string }> {
    return request(`${this.base}/api/replay`, post({ edit_log: editLog }));
  }
}
