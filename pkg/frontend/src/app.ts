import { ApiClient, ApiError } from './api';
import { MissionMap } from './map';
import { renderTextMirror, renderTokenPanel, type ClauseError } from './panel';
import type { CompileResponse, MissionRecordDto, ParseResponse } from './types';

export interface UiMissionView {
  utterance: string;
  parse: ParseResponse | null;
  compiled: CompileResponse | null;
  clauseError: ClauseError | null;
  compileError: string | null;
  selected: { id: string; revision: number } | null;
  dirty: boolean;
  conflict: boolean;
  status: string;
}

export interface AppElements {
  textArea: HTMLTextAreaElement;
  textMirror: HTMLElement;
  tokenPanel: HTMLElement;
  layerPanel: HTMLElement;
  mapContainer: HTMLElement;
  statusBar: HTMLElement;
  nameInput: HTMLInputElement;
  missionSelect: HTMLSelectElement;
}

/**
 * Single-mission editing session. All rendering is a function of the view
 * state; the mission store is only written by an explicit save().
 */
export class MissionApp {
  view: UiMissionView = {
    utterance: '',
    parse: null,
    compiled: null,
    clauseError: null,
    compileError: null,
    selected: null,
    dirty: false,
    conflict: false,
    status: '',
  };
  readonly map: MissionMap;
  private previewSeq = 0;

  constructor(
    private els: AppElements,
    private api: ApiClient,
    tileUrl: string | null = null,
  ) {
    this.map = new MissionMap(els.mapContainer, tileUrl);
    els.textArea.addEventListener('input', () => {
      void this.onEdit(els.textArea.value);
    });
    els.tokenPanel.addEventListener('mouseover', (event) => {
      const row = (event.target as HTMLElement).closest<HTMLElement>('.token-row');
      if (row && row.dataset.clauseIndex !== undefined) {
        this.renderMirror(Number(row.dataset.clauseIndex));
      }
    });
    els.tokenPanel.addEventListener('mouseout', () => this.renderMirror(null));
  }

  /** Edit handler: marks the buffer dirty and re-previews (latest edit wins). */
  async onEdit(text: string): Promise<void> {
    this.view.utterance = text;
    this.view.dirty = true;
    await this.preview(text);
  }

  /**
   * Parse then compile, rendering map and token panel. Stale responses are
   * dropped: only the most recent call may publish its result.
   */
  async preview(text: string): Promise<void> {
    const seq = ++this.previewSeq;
    if (!text.trim()) {
      this.view.parse = null;
      this.view.compiled = null;
      this.view.clauseError = null;
      this.view.compileError = null;
      this.render();
      return;
    }
    let parse: ParseResponse;
    try {
      parse = await this.api.parse(text);
    } catch (err) {
      if (seq !== this.previewSeq) return;
      this.view.parse = null;
      this.view.compiled = null;
      if (err instanceof ApiError && err.envelope.code === 'clause_parse_error') {
        const d = err.envelope.detail;
        this.view.clauseError = {
          message: err.envelope.message,
          clause: String(d['clause'] ?? ''),
          offset: Number(d['offset'] ?? 0),
          hint: String(d['hint'] ?? ''),
        };
        this.view.compileError = null;
      } else {
        this.view.clauseError = null;
        this.view.compileError = err instanceof Error ? err.message : String(err);
      }
      this.render();
      return;
    }
    if (seq !== this.previewSeq) return;
    this.view.parse = parse;
    this.view.clauseError = null;

    if (!parse.tokens) {
      // structural diagnostics only; nothing to compile
      this.view.compiled = null;
      this.view.compileError = null;
      this.render();
      return;
    }
    try {
      const compiled = await this.api.compile(parse.tokens);
      if (seq !== this.previewSeq) return;
      this.view.compiled = compiled;
      this.view.compileError = null;
    } catch (err) {
      if (seq !== this.previewSeq) return;
      this.view.compiled = null;
      this.view.compileError = err instanceof Error ? err.message : String(err);
    }
    this.render();
  }

  toggleLayer(kind: string): void {
    this.map.toggleLayer(kind);
    this.renderLayerPanel();
  }

  /** Save the buffer: create on first save, revision-checked update after. */
  async save(): Promise<void> {
    if (!this.view.parse || !this.view.parse.tokens) {
      this.view.status = 'nothing to save: parse the mission first';
      this.renderStatus();
      return;
    }
    const body = {
      name: this.els.nameInput.value,
      tokens: this.view.parse.tokens,
      utterance: this.view.utterance,
    };
    try {
      let record: MissionRecordDto;
      if (this.view.selected) {
        record = await this.api.updateMission(
          this.view.selected.id,
          this.view.selected.revision,
          body,
        );
      } else {
        record = await this.api.createMission(body);
      }
      this.view.selected = { id: record.id, revision: record.revision };
      this.view.dirty = false;
      this.view.conflict = false;
      this.view.status = `saved revision ${record.revision}`;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.view.conflict = true;
        this.view.status = 'save conflict: mission changed elsewhere, reload to continue';
      } else {
        this.view.status = err instanceof Error ? err.message : String(err);
      }
    }
    this.renderStatus();
  }

  /** Load a stored mission into the buffer and preview it. */
  async load(id: string): Promise<void> {
    const record = await this.api.getMission(id);
    this.view.utterance = record.utterance || record.tokens;
    this.els.textArea.value = this.view.utterance;
    this.els.nameInput.value = record.name;
    this.view.selected = { id: record.id, revision: record.revision };
    this.view.conflict = false;
    await this.preview(this.view.utterance);
    this.view.dirty = false;
    this.renderStatus();
  }

  async refreshMissionList(): Promise<void> {
    const missions = await this.api.listMissions();
    const select = this.els.missionSelect;
    select.replaceChildren();
    const placeholder = document.createElement('option');
    placeholder.value = '';
    placeholder.textContent = '-- stored missions --';
    select.appendChild(placeholder);
    for (const m of missions) {
      const option = document.createElement('option');
      option.value = m.id;
      option.textContent = `${m.name || m.id} (rev ${m.revision})`;
      select.appendChild(option);
    }
  }

  exportUrl(format: 'json' | 'csv'): string | null {
    return this.view.selected ? this.api.exportUrl(this.view.selected.id, format) : null;
  }

  render(): void {
    this.map.render(this.view.compiled);
    renderTokenPanel(this.els.tokenPanel, this.view.parse, this.view.compileError);
    this.renderMirror(null);
    this.renderLayerPanel();
    this.renderStatus();
  }

  private renderMirror(highlightClause: number | null): void {
    renderTextMirror(
      this.els.textMirror,
      this.view.utterance,
      this.view.parse,
      this.view.clauseError,
      highlightClause,
    );
  }

  private renderLayerPanel(): void {
    const panel = this.els.layerPanel;
    panel.replaceChildren();
    for (const kind of this.map.kinds()) {
      const label = document.createElement('label');
      label.className = 'layer-toggle';
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.checked = this.map.isVisible(kind);
      box.dataset.kind = kind;
      box.addEventListener('change', () => this.toggleLayer(kind));
      label.appendChild(box);
      label.appendChild(document.createTextNode(kind));
      panel.appendChild(label);
    }
  }

  private renderStatus(): void {
    const marks = [];
    if (this.view.dirty) marks.push('unsaved changes');
    if (this.view.conflict) marks.push('CONFLICT');
    this.els.statusBar.textContent = [this.view.status, ...marks].filter(Boolean).join(' | ');
  }
}
