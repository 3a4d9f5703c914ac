/**
 * setup.ts - screen 1: open a project and shape it.
 *
 * Create empty / from the worked-example template / open an existing
 * project, then manage criteria, alternatives and the ratings grid.
 * Criteria and alternatives travel as whole-document updates (the
 * service validates them together); ratings go through their own
 * endpoint row by row. Field-level rejections land next to the
 * offending input.
 */

import { ProjectDocument } from '../api.js';
import { el, clear, option } from '../dom.js';
import { AppStore } from '../state.js';

export function createSetupScreen(store: AppStore): HTMLElement {
  const root = el('section', { class: 'screen screen-setup' });
  let renderedDoc: ProjectDocument | null = null;

  function render() {
    clear(root);
    const { doc } = store.current;
    renderedDoc = doc;
    if (!doc) {
      root.append(openForm(store));
      return;
    }
    root.append(
      el('h2', {}, `project ${doc.id}`),
      el('p', { class: 'muted' }, `version ${doc.version}`),
      criteriaPanel(store, doc),
      alternativesPanel(store, doc),
      ratingsPanel(store, doc),
    );
  }

  store.subscribe((state) => {
    if (state.doc !== renderedDoc) render();
  });
  render();
  return root;
}

// ── opening ───────────────────────────────────────────────────────────

function openForm(store: AppStore): HTMLElement {
  const panel = el('div', { class: 'panel' });
  const idInput = el('input', { placeholder: 'project id', 'data-role': 'project-id' });
  const template = el('select', { 'data-role': 'template' });
  template.append(
    option('empty', 'empty project'),
    option('case-study', 'worked example (21 projects, 10 criteria)'),
  );
  const problem = el('p', { class: 'field-error' });

  const createBtn = el('button', { 'data-role': 'create' }, 'create');
  createBtn.addEventListener('click', () => {
    void store.run(async () => {
      const { document: doc, token } = await store.api.createProject(idInput.value, {
        template: template.value as 'empty' | 'case-study',
      });
      store.openProject(doc, token);
    });
  });

  const existingId = el('input', { placeholder: 'existing id', 'data-role': 'existing-id' });
  const existingToken = el('input', {
    placeholder: 'write token (optional)',
    'data-role': 'existing-token',
  });
  const openBtn = el('button', { 'data-role': 'open' }, 'open');
  openBtn.addEventListener('click', () => {
    void store.run(async () => {
      const doc = await store.api.getProject(existingId.value);
      store.openProject(doc, existingToken.value);
    });
  });

  panel.append(
    el('h2', {}, 'open a project'),
    el('div', { class: 'row' }, idInput, template, createBtn),
    el('div', { class: 'row' }, existingId, existingToken, openBtn),
    problem,
  );
  return panel;
}

// ── criteria ──────────────────────────────────────────────────────────

function criteriaPanel(store: AppStore, doc: ProjectDocument): HTMLElement {
  const panel = el('div', { class: 'panel', 'data-role': 'criteria' });
  panel.append(el('h3', {}, 'criteria'));

  const table = el('table', { class: 'grid' });
  const head = el('tr');
  for (const h of ['id', 'name', 'direction', 'scale', 'numeric']) {
    head.append(el('th', {}, h));
  }
  table.append(head);
  for (const c of doc.criteria) {
    table.append(
      el(
        'tr',
        {},
        el('td', {}, c.id),
        el('td', {}, c.name),
        el('td', {}, c.direction),
        el('td', {}, `${c.scale_min} .. ${c.scale_max}`),
        el('td', {}, c.numeric ? 'yes' : ''),
      ),
    );
  }
  panel.append(table);

  const id = el('input', { placeholder: 'id', 'data-role': 'criterion-id' });
  const name = el('input', { placeholder: 'name', 'data-role': 'criterion-name' });
  const direction = el('select', { 'data-role': 'criterion-direction' });
  direction.append(option('maximize'), option('minimize'));
  const lo = el('input', { placeholder: 'min', size: '6', 'data-role': 'criterion-min' });
  const hi = el('input', { placeholder: 'max', size: '6', 'data-role': 'criterion-max' });
  const numeric = el('input', {
    type: 'checkbox',
    title: 'measured, not judged',
    'data-role': 'criterion-numeric',
  });
  const fieldError = el('span', { class: 'field-error', 'data-role': 'criterion-error' });

  const add = el('button', { 'data-role': 'add-criterion' }, 'add criterion');
  add.addEventListener('click', () => {
    fieldError.textContent = '';
    void store.run(async () => {
      const next: ProjectDocument = {
        ...doc,
        criteria: [
          ...doc.criteria,
          {
            id: id.value,
            name: name.value,
            direction: direction.value as 'maximize' | 'minimize',
            scale_min: lo.value,
            scale_max: hi.value,
            numeric: numeric.checked,
          },
        ],
      };
      try {
        const saved = await store.api.putProject(next, store.current.token);
        store.patch({ doc: saved.document });
      } catch (err) {
        fieldError.textContent = err instanceof Error ? err.message : String(err);
        throw err;
      }
    });
  });

  panel.append(
    el('div', { class: 'row' }, id, name, direction, lo, hi, numeric, add, fieldError),
  );
  return panel;
}

// ── alternatives ──────────────────────────────────────────────────────

function alternativesPanel(store: AppStore, doc: ProjectDocument): HTMLElement {
  const panel = el('div', { class: 'panel', 'data-role': 'alternatives' });
  panel.append(
    el('h3', {}, 'alternatives'),
    el('p', {}, doc.alternatives.map((a) => a.id).join(', ') || 'none yet'),
  );

  const id = el('input', { placeholder: 'id', 'data-role': 'alternative-id' });
  const fieldError = el('span', { class: 'field-error' });
  const add = el('button', { 'data-role': 'add-alternative' }, 'add alternative');
  add.addEventListener('click', () => {
    fieldError.textContent = '';
    void store.run(async () => {
      const next: ProjectDocument = {
        ...doc,
        alternatives: [...doc.alternatives, { id: id.value, name: '' }],
      };
      try {
        const saved = await store.api.putProject(next, store.current.token);
        store.patch({ doc: saved.document });
      } catch (err) {
        fieldError.textContent = err instanceof Error ? err.message : String(err);
        throw err;
      }
    });
  });

  panel.append(el('div', { class: 'row' }, id, add, fieldError));
  return panel;
}

// ── ratings grid ──────────────────────────────────────────────────────

function ratingsPanel(store: AppStore, doc: ProjectDocument): HTMLElement {
  const panel = el('div', { class: 'panel', 'data-role': 'ratings' });
  panel.append(el('h3', {}, 'ratings'));
  if (!doc.criteria.length || !doc.alternatives.length) {
    panel.append(el('p', { class: 'muted' }, 'add criteria and alternatives first'));
    return panel;
  }

  const table = el('table', { class: 'grid' });
  const head = el('tr', {}, el('th'));
  for (const c of doc.criteria) head.append(el('th', {}, c.id));
  head.append(el('th'));
  table.append(head);

  for (const alt of doc.alternatives) {
    const row = el('tr');
    row.append(el('th', {}, alt.id));
    const inputs: Record<string, HTMLInputElement> = {};
    for (const c of doc.criteria) {
      const cell = el('input', {
        size: '7',
        value: doc.ratings[alt.id]?.[c.id] ?? '',
        'data-rating': `${alt.id}:${c.id}`,
      });
      inputs[c.id] = cell;
      row.append(el('td', {}, cell));
    }
    const fieldError = el('span', { class: 'field-error' });
    const save = el('button', { 'data-save-ratings': alt.id }, 'save row');
    save.addEventListener('click', () => {
      fieldError.textContent = '';
      void store.run(async () => {
        const values: Record<string, string> = {};
        for (const [cid, input] of Object.entries(inputs)) values[cid] = input.value;
        try {
          await store.api.putRatings(
            doc.id, alt.id, values, doc.version, store.current.token,
          );
        } catch (err) {
          fieldError.textContent = err instanceof Error ? err.message : String(err);
          throw err;
        }
        await store.refresh();
      });
    });
    row.append(el('td', {}, save, fieldError));
    table.append(row);
  }

  panel.append(table);
  return panel;
}
