import type { ParseResponse } from './types';

export interface ClauseError {
  message: string;
  clause: string;
  offset: number;
  hint: string;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;');
}

/**
 * Token panel: one row per parsed command. Rows carry data-clause-index so
 * hovering can highlight the matching source span in the text mirror.
 */
export function renderTokenPanel(
  container: HTMLElement,
  parse: ParseResponse | null,
  compileError: string | null,
): void {
  container.replaceChildren();
  if (compileError) {
    const err = document.createElement('div');
    err.className = 'compile-error';
    err.textContent = compileError;
    container.appendChild(err);
  }
  if (!parse) {
    return;
  }
  const list = document.createElement('ol');
  list.className = 'token-list';
  const tokens = parse.tokens ? parse.tokens.split('; ') : [];
  tokens.forEach((token, i) => {
    const row = document.createElement('li');
    row.className = 'token-row';
    row.dataset.clauseIndex = String(i);
    row.textContent = token;
    list.appendChild(row);
  });
  container.appendChild(list);
  for (const diag of parse.diagnostics) {
    const note = document.createElement('div');
    note.className = `diagnostic diagnostic-${diag.severity}`;
    note.textContent = `${diag.severity}: ${diag.message}`;
    container.appendChild(note);
  }
}

/** Panel text exactly as shown: one token per line (used for save/load checks). */
export function tokenPanelText(container: HTMLElement): string {
  return [...container.querySelectorAll('.token-row')]
    .map((row) => row.textContent ?? '')
    .join('\n');
}

/**
 * Mirror of the text buffer with clause spans wrapped in <span> and (when a
 * clause fails to parse) an inline <mark class="error-marker"> at the
 * failure offset.
 */
export function renderTextMirror(
  container: HTMLElement,
  text: string,
  parse: ParseResponse | null,
  error: ClauseError | null,
  highlightClause: number | null = null,
): void {
  if (error) {
    const start = Math.min(error.offset, text.length);
    const clauseStart = error.clause ? text.indexOf(error.clause) : -1;
    const end =
      clauseStart >= 0 && clauseStart + error.clause.length > start
        ? clauseStart + error.clause.length
        : Math.min(text.length, start + 1);
    container.innerHTML =
      escapeHtml(text.slice(0, start)) +
      `<mark class="error-marker" data-offset="${error.offset}" title="${escapeHtml(error.hint)}">` +
      escapeHtml(text.slice(start, end)) +
      '</mark>' +
      escapeHtml(text.slice(end));
    return;
  }
  if (!parse) {
    container.textContent = text;
    return;
  }
  let html = '';
  let cursor = 0;
  parse.trace.forEach((entry, i) => {
    const [begin, end] = entry.span;
    html += escapeHtml(text.slice(cursor, begin));
    const highlight = i === highlightClause ? ' clause-highlight' : '';
    html += `<span class="clause${highlight}" data-clause-index="${i}">${escapeHtml(
      text.slice(begin, end),
    )}</span>`;
    cursor = end;
  });
  html += escapeHtml(text.slice(cursor));
  container.innerHTML = html;
}
