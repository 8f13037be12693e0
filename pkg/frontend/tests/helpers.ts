import type { AppElements } from '../src/app';
import type { ErrorEnvelope, MissionRecordDto } from '../src/types';

/** DOM scaffold matching index.html's element contract. */
export function makeDom(): AppElements {
  document.body.innerHTML = `
    <input id="mission-name" type="text">
    <textarea id="mission-text"></textarea>
    <div id="text-mirror"></div>
    <div id="token-panel"></div>
    <div id="layer-panel"></div>
    <div id="map"></div>
    <div id="status-bar"></div>
    <select id="mission-select"></select>
  `;
  const get = (id: string) => document.getElementById(id)!;
  return {
    textArea: get('mission-text') as HTMLTextAreaElement,
    textMirror: get('text-mirror'),
    tokenPanel: get('token-panel'),
    layerPanel: get('layer-panel'),
    mapContainer: get('map'),
    statusBar: get('status-bar'),
    nameInput: get('mission-name') as HTMLInputElement,
    missionSelect: get('mission-select') as HTMLSelectElement,
  };
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

interface ParseRule {
  response?: unknown;
  error?: { status: number; body: ErrorEnvelope };
  delay?: Promise<void>;
}

/**
 * In-memory stand-in for the mission service: canned parse/compile
 * responses plus a revision-checked mission store with the same semantics
 * as the real one (create rev 1, stale update -> 409 envelope).
 */
export class FakeService {
  parseRules = new Map<string, ParseRule>();
  compileRules = new Map<string, unknown>();
  records = new Map<string, MissionRecordDto>();
  calls: string[] = [];
  private nextId = 1;

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? 'GET';
    const path = url.replace(/^https?:\/\/[^/]+/, '');
    this.calls.push(`${method} ${path}`);
    const body = init?.body ? JSON.parse(String(init.body)) : null;

    if (method === 'POST' && path === '/api/v1/parse') {
      const rule = this.parseRules.get(body.text);
      if (!rule) {
        return json({ code: 'clause_parse_error', message: 'no rule', detail: {} }, 422);
      }
      if (rule.delay) await rule.delay;
      if (rule.error) return json(rule.error.body, rule.error.status);
      return json(rule.response);
    }
    if (method === 'POST' && path === '/api/v1/compile') {
      const compiled = this.compileRules.get(body.tokens);
      if (!compiled) {
        return json({ code: 'track_without_leg', message: 'cannot compile', detail: {} }, 422);
      }
      return json(compiled);
    }
    if (method === 'GET' && path === '/api/v1/missions') {
      return json({ missions: [...this.records.values()] });
    }
    if (method === 'POST' && path === '/api/v1/missions') {
      const record: MissionRecordDto = {
        id: `m${this.nextId++}`,
        name: body.name ?? '',
        utterance: body.utterance ?? '',
        tokens: body.tokens,
        createdAt: '2026-01-01T00:00:00Z',
        updatedAt: '2026-01-01T00:00:00Z',
        revision: 1,
      };
      this.records.set(record.id, record);
      return json(record, 201);
    }
    const single = path.match(/^\/api\/v1\/missions\/([^/?]+)$/);
    if (single) {
      const record = this.records.get(single[1]!);
      if (!record) {
        return json({ code: 'unknown_mission', message: 'no such mission', detail: {} }, 404);
      }
      if (method === 'GET') return json(record);
      if (method === 'PUT') {
        if (body.revision !== record.revision) {
          return json(
            {
              code: 'revision_conflict',
              message: 'stale revision',
              detail: { currentRevision: record.revision, givenRevision: body.revision },
            },
            409,
          );
        }
        const updated: MissionRecordDto = {
          ...record,
          name: body.name ?? record.name,
          tokens: body.tokens ?? record.tokens,
          utterance: body.utterance ?? record.utterance,
          revision: record.revision + 1,
        };
        this.records.set(updated.id, updated);
        return json(updated);
      }
    }
    return json({ code: 'http_error', message: `unhandled ${method} ${path}`, detail: {} }, 500);
  };
}
