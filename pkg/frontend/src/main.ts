import { ApiClient } from './api';
import { MissionApp, type AppElements } from './app';
import type { AppConfig } from './types';

async function loadConfig(): Promise<AppConfig> {
  try {
    const resp = await fetch('./config.json');
    if (resp.ok) {
      return (await resp.json()) as AppConfig;
    }
  } catch {
    // fall through to defaults (same-origin API, offline grid)
  }
  return { apiBase: '', tileUrl: null };
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function bootstrap(): Promise<void> {
  const config = await loadConfig();
  const els: AppElements = {
    textArea: byId<HTMLTextAreaElement>('mission-text'),
    textMirror: byId('text-mirror'),
    tokenPanel: byId('token-panel'),
    layerPanel: byId('layer-panel'),
    mapContainer: byId('map'),
    statusBar: byId('status-bar'),
    nameInput: byId<HTMLInputElement>('mission-name'),
    missionSelect: byId<HTMLSelectElement>('mission-select'),
  };
  const app = new MissionApp(els, new ApiClient(config.apiBase), config.tileUrl);

  byId<HTMLButtonElement>('save-btn').addEventListener('click', () => void app.save());
  byId<HTMLButtonElement>('load-btn').addEventListener('click', () => {
    const id = els.missionSelect.value;
    if (id) void app.load(id);
  });
  for (const format of ['json', 'csv'] as const) {
    byId<HTMLButtonElement>(`export-${format}-btn`).addEventListener('click', () => {
      const url = app.exportUrl(format);
      if (url) window.open(url, '_blank');
    });
  }
  await app.refreshMissionList();
}

void bootstrap();
