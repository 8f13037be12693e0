import type {
  CompileResponse,
  ErrorEnvelope,
  MissionRecordDto,
  ParseResponse,
} from './types';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Service error carrying the uniform {code, message, detail} envelope. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public envelope: ErrorEnvelope,
  ) {
    super(`${envelope.code}: ${envelope.message}`);
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  if (resp.ok) {
    return (await resp.json()) as T;
  }
  let envelope: ErrorEnvelope;
  try {
    envelope = (await resp.json()) as ErrorEnvelope;
  } catch {
    envelope = { code: 'http_error', message: `HTTP ${resp.status}`, detail: {} };
  }
  throw new ApiError(resp.status, envelope);
}

export class ApiClient {
  constructor(
    private base: string = '',
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchFn(this.base + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  parse(text: string): Promise<ParseResponse> {
    return this.post('/api/v1/parse', { text });
  }

  compile(tokens: string): Promise<CompileResponse> {
    return this.post('/api/v1/compile', { tokens });
  }

  listMissions(): Promise<MissionRecordDto[]> {
    return this.fetchFn(this.base + '/api/v1/missions')
      .then((r) => unwrap<{ missions: MissionRecordDto[] }>(r))
      .then((body) => body.missions);
  }

  getMission(id: string): Promise<MissionRecordDto> {
    return this.fetchFn(`${this.base}/api/v1/missions/${id}`).then((r) =>
      unwrap<MissionRecordDto>(r),
    );
  }

  createMission(body: { name: string; tokens: string; utterance: string }): Promise<MissionRecordDto> {
    return this.post('/api/v1/missions', body);
  }

  updateMission(
    id: string,
    revision: number,
    patch: { name?: string; tokens?: string; utterance?: string },
  ): Promise<MissionRecordDto> {
    return this.fetchFn(`${this.base}/api/v1/missions/${id}`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ revision, ...patch }),
    }).then((r) => unwrap<MissionRecordDto>(r));
  }

  exportUrl(id: string, format: 'json' | 'csv'): string {
    return `${this.base}/api/v1/missions/${id}/export?format=${format}`;
  }
}
