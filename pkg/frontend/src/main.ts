import { ReviewApi } from './api';
import { BoardStore } from './store';
import { renderApp } from './render';

const api = new ReviewApi('');
const store = new BoardStore(api);

function redraw(): void {
  const root = document.getElementById('app');
  if (root) root.innerHTML = renderApp(store);
}

function wireEvents(root: HTMLElement): void {
  root.addEventListener('dragstart', (event) => {
    const chip = (event.target as HTMLElement).closest<HTMLElement>('.term');
    if (!chip || !event.dataTransfer) return;
    event.dataTransfer.setData(
      'application/json',
      JSON.stringify({ term: chip.dataset.term, from: chip.dataset.from })
    );
  });

  root.addEventListener('dragover', (event) => {
    if ((event.target as HTMLElement).closest('.category')) event.preventDefault();
  });

  root.addEventListener('drop', async (event) => {
    const card = (event.target as HTMLElement).closest<HTMLElement>('.category');
    const raw = event.dataTransfer?.getData('application/json');
    if (!card || !raw) return;
    event.preventDefault();
    const { term, from } = JSON.parse(raw) as { term: string; from: string };
    if (from !== card.dataset.id) {
      await store.moveTerm(term, from, card.dataset.id!);
      redraw();
    }
  });

  // Double-click a label to rename it in place.
  root.addEventListener('dblclick', async (event) => {
    const label = (event.target as HTMLElement).closest<HTMLElement>('.label');
    if (!label) return;
    const next = window.prompt('New label:', label.textContent ?? '');
    if (next && next.trim()) {
      await store.renameLabel(label.dataset.id!, next.trim());
      redraw();
    }
  });

  root.addEventListener('click', async (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>('button.assign');
    if (!button) return;
    const term = button.dataset.term!;
    const select = root.querySelector<HTMLSelectElement>(`select.assign-target[data-term="${CSS.escape(term)}"]`);
    if (select && select.value) {
      await store.assignTerm(term, select.value);
      redraw();
    }
  });
}

async function init(): Promise<void> {
  await store.load();
  redraw();
  const root = document.getElementById('app');
  if (root) wireEvents(root);
}

void init();
