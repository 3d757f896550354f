import type { BoardStore } from './store';
import type { CategoryView } from './types';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

// Scores are printed exactly as the service formatted them.
function scoreBadges(category: CategoryView): string {
  const d = category.display;
  return (
    `<span class="badge badge-q" title="quality">Q ${d.quality}</span>` +
    `<span class="badge" title="term similarity">T ${d.term_similarity}</span>` +
    `<span class="badge" title="label similarity">L ${d.label_similarity}</span>`
  );
}

export function renderCategory(category: CategoryView): string {
  const chips = category.terms
    .map(
      (term) =>
        `<li class="term" draggable="true" data-term="${escapeHtml(term)}" data-from="${category.id}">` +
        `${escapeHtml(term)}</li>`
    )
    .join('');
  return (
    `<section class="category" data-id="${category.id}">` +
    `<header><h2 class="label" data-id="${category.id}">${escapeHtml(category.label)}</h2>` +
    `${scoreBadges(category)}<span class="size">${category.size} terms</span></header>` +
    `<ul class="terms">${chips}</ul>` +
    `</section>`
  );
}

export function renderBoard(store: BoardStore): string {
  const banner = store.offline
    ? '<div class="banner offline">Service unreachable: read-only view.</div>'
    : store.lastError
      ? `<div class="banner error">${escapeHtml(store.lastError)}</div>`
      : '';
  const cards = store.categories.map(renderCategory).join('');
  return `${banner}<main class="board">${cards}</main>`;
}

export function renderTray(store: BoardStore): string {
  if (store.unassigned.length === 0) {
    return '<aside class="tray empty">No unassigned terms. Everything is categorized.</aside>';
  }
  const targets = store.categories
    .map((c) => `<option value="${c.id}">${escapeHtml(c.label)}</option>`)
    .join('');
  const rows = store.unassigned
    .map(
      (term) =>
        `<li class="tray-term" data-term="${escapeHtml(term)}">${escapeHtml(term)}` +
        `<select class="assign-target" data-term="${escapeHtml(term)}">${targets}</select>` +
        `<button class="assign" data-term="${escapeHtml(term)}">assign</button></li>`
    )
    .join('');
  return `<aside class="tray"><h2>Unassigned terms</h2><ul>${rows}</ul></aside>`;
}

export function renderApp(store: BoardStore): string {
  return renderBoard(store) + renderTray(store);
}
