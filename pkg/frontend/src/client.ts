import type { GazeSampleWire, PollResponse, RegistryPayload } from './types';

export class ServiceError extends Error {
  constructor(
    public code: string,
    public detail: string,
    public status: number,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function parseError(resp: Response): Promise<ServiceError> {
  try {
    const body = (await resp.json()) as { error?: string; detail?: string };
    return new ServiceError(body.error ?? 'Unknown', body.detail ?? '', resp.status);
  } catch {
    return new ServiceError('Unknown', `HTTP ${resp.status}`, resp.status);
  }
}

/**
 * Thin client over the session protocol. Polling convention: pass the
 * last seen seq as `since`; the service returns entries with larger seq.
 */
export class GazeServiceClient {
  private fetchImpl: typeof fetch;

  constructor(
    public baseUrl: string,
    fetchImpl?: typeof fetch,
  ) {
    this.fetchImpl = fetchImpl ?? fetch.bind(globalThis);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  async createSession(body: {
    pipeline?: Record<string, unknown>;
    interaction?: Record<string, unknown>;
    source: Record<string, unknown>;
  }): Promise<string> {
    const data = await this.request<{ id: string }>('POST', '/sessions', body);
    return data.id;
  }

  pollEvents(sessionId: string, since: number): Promise<PollResponse> {
    return this.request('GET', `/sessions/${sessionId}/events?since=${since}`);
  }

  async putTargets(sessionId: string, registry: RegistryPayload): Promise<number> {
    const data = await this.request<{ generation: number }>(
      'PUT',
      `/sessions/${sessionId}/targets`,
      registry,
    );
    return data.generation;
  }

  async pushGaze(sessionId: string, samples: GazeSampleWire[]): Promise<number> {
    const data = await this.request<{ accepted: number }>(
      'POST',
      `/sessions/${sessionId}/gaze`,
      { samples },
    );
    return data.accepted;
  }

  async patchConfig(sessionId: string, config: Record<string, unknown>): Promise<void> {
    await this.request('PATCH', `/sessions/${sessionId}/config`, config);
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request('DELETE', `/sessions/${sessionId}`);
  }

  async health(): Promise<boolean> {
    try {
      const resp = await this.fetchImpl(`${this.baseUrl}/healthz`);
      return resp.ok;
    } catch {
      return false;
    }
  }
}
