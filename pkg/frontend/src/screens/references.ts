/**
 * references.ts - screen 2: reference levels per criterion.
 *
 * Each judged criterion gets a handful of levels the decision maker will
 * compare pairwise; here they are entered and the resulting value
 * function is previewed as a curve. The curve always comes back from
 * the server (normalize), never from local arithmetic, and is redrawn
 * after every accepted edit.
 */

import { NormalizeResult, ProjectDocument } from '../api.js';
import { drawScaleCurve } from '../curve.js';
import { el, clear } from '../dom.js';
import { AppStore } from '../state.js';

export function createReferencesScreen(store: AppStore): HTMLElement {
  const root = el('section', { class: 'screen screen-references' });
  let scales: NormalizeResult | null = null;
  let renderedDoc: ProjectDocument | null = null;

  async function redraw() {
    const { doc } = store.current;
    if (doc) {
      try {
        scales = await store.api.normalize(doc.id);
      } catch {
        scales = null; // incomplete project: no curves yet
      }
    } else {
      scales = null;
    }
    render();
  }

  function render() {
    clear(root);
    const { doc } = store.current;
    renderedDoc = doc;
    if (!doc) {
      root.append(el('p', { class: 'muted' }, 'open a project first'));
      return;
    }
    root.append(el('h2', {}, 'reference levels'));
    for (const c of doc.criteria) {
      root.append(criterionCard(store, doc, c.id, scales, redraw));
    }
    if (!doc.criteria.length) {
      root.append(el('p', { class: 'muted' }, 'no criteria yet'));
    }
  }

  store.subscribe((state) => {
    if (state.doc !== renderedDoc) {
      renderedDoc = state.doc; // claim before the async hop, or patches loop
      void store.run(redraw);
    }
  });
  void store.run(redraw);
  return root;
}

function criterionCard(
  store: AppStore,
  doc: ProjectDocument,
  cid: string,
  scales: NormalizeResult | null,
  redraw: () => Promise<void>,
): HTMLElement {
  const card = el('div', { class: 'panel', 'data-criterion': cid });
  const levels = doc.references[cid] ?? [];
  const input = el('input', {
    size: '40',
    value: levels.join(', '),
    'data-levels': cid,
    placeholder: 'comma-separated levels, e.g. 2500, 5000, 10000',
  });
  const fieldError = el('span', { class: 'field-error' });
  const save = el('button', { 'data-save-levels': cid }, 'save levels');
  save.addEventListener('click', () => {
    fieldError.textContent = '';
    void store.run(async () => {
      const parts = input.value.split(',').map((s) => s.trim()).filter(Boolean);
      try {
        await store.api.putReferences(
          doc.id, cid, parts, doc.version, store.current.token,
        );
      } catch (err) {
        fieldError.textContent = err instanceof Error ? err.message : String(err);
        throw err;
      }
      await store.refresh();
      await redraw();
    });
  });

  card.append(
    el('h3', {}, cid),
    el('div', { class: 'row' }, input, save, fieldError),
  );

  const scale = scales?.scales[cid];
  if (scale) {
    card.append(drawScaleCurve(cid, scale));
  } else {
    card.append(
      el('p', { class: 'muted curve-placeholder' },
        'curve appears once levels and judgments are in place'),
    );
  }
  return card;
}
