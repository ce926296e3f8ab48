// Thin typed client over the service endpoints. fetch is injectable so
// component tests can stub the whole service.

import type { ChatResponse, HealthResponse, SessionResponse } from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

export class ChatApi {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async chat(message: string, sessionId: string | null): Promise<ChatResponse> {
    const body: Record<string, unknown> = { message };
    if (sessionId) body.session_id = sessionId;
    const resp = await this.fetchImpl(`${this.baseUrl}/v1/chat`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await safeDetail(resp));
    }
    return (await resp.json()) as ChatResponse;
  }

  async health(): Promise<HealthResponse> {
    const resp = await this.fetchImpl(`${this.baseUrl}/v1/health`);
    if (!resp.ok) throw new ApiError(resp.status, await safeDetail(resp));
    return (await resp.json()) as HealthResponse;
  }

  async session(id: string): Promise<SessionResponse> {
    const resp = await this.fetchImpl(`${this.baseUrl}/v1/sessions/${encodeURIComponent(id)}`);
    if (!resp.ok) throw new ApiError(resp.status, await safeDetail(resp));
    return (await resp.json()) as SessionResponse;
  }
}

async function safeDetail(resp: Response): Promise<string> {
  try {
    const body = (await resp.json()) as { detail?: string };
    return body.detail ?? `HTTP ${resp.status}`;
  } catch {
    return `HTTP ${resp.status}`;
  }
}
