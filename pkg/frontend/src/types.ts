/** Wire types for the mission service API (/api/v1). */

export interface WaypointDto {
  lat: number;
  lon: number;
  mode: 'depth' | 'altitude';
  value_m: number;
  speed_mps: number;
  kind: string;
  src: number;
}

export interface BoundingBoxDto {
  minLat: number;
  minLon: number;
  maxLat: number;
  maxLon: number;
}

export interface StatsDto {
  pathLength: number;
  estimatedDuration: number;
  waypointCount: number;
  boundingBox: BoundingBoxDto;
}

export interface CommandDto {
  type: string;
  [key: string]: unknown;
}

export interface TraceEntryDto {
  span: [number, number];
  templateId: string;
  slots: Record<string, unknown>;
}

export interface DiagnosticDto {
  severity: 'error' | 'warning';
  code: string;
  message: string;
  commandIndex: number | null;
}

export interface ParseResponse {
  tokens: string;
  mission: { commands: CommandDto[] };
  trace: TraceEntryDto[];
  diagnostics: DiagnosticDto[];
}

export interface CompileResponse {
  waypoints: WaypointDto[];
  stats: StatsDto;
}

export interface MissionRecordDto {
  id: string;
  name: string;
  utterance: string;
  tokens: string;
  createdAt: string;
  updatedAt: string;
  revision: number;
}

export interface ErrorEnvelope {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}

export interface AppConfig {
  /** Service base URL; empty string means same origin. */
  apiBase: string;
  /** Slippy-map tile URL template ({z}/{x}/{y}); null renders the offline grid. */
  tileUrl: string | null;
}
