/**
 * statements.ts - screen 4: the decision maker's preference statements.
 *
 * A typed form per statement kind: pick the kind, the right number of
 * alternative or criterion slots appears. Committing posts to the
 * service; the committed list below supports deletion. Staging for
 * what-if exploration lives on its own screen.
 */

import { StatementDoc } from '../api.js';
import { el, clear, option } from '../dom.js';
import { describeStatement } from '../format.js';
import { AppStore } from '../state.js';

/** kind -> [argument domain, arity], mirroring the service's checks. */
export const STATEMENT_KINDS: Record<string, ['alternative' | 'criterion', number]> = {
  weak_pref: ['alternative', 2],
  strict_pref: ['alternative', 2],
  indifference: ['alternative', 2],
  intensity_strict: ['alternative', 4],
  intensity_indiff: ['alternative', 4],
  importance_strict: ['criterion', 2],
  importance_indiff: ['criterion', 2],
  interaction_positive: ['criterion', 2],
  interaction_negative: ['criterion', 2],
};

const SLOT_HINTS: Record<number, string[]> = {
  2: ['first', 'second'],
  4: ['a', 'b', 'c', 'd'],
};

export function createStatementsScreen(store: AppStore): HTMLElement {
  const root = el('section', { class: 'screen screen-statements' });
  let renderedDoc: object | null = null;
  let kind = 'weak_pref';

  function render() {
    clear(root);
    const { doc } = store.current;
    renderedDoc = doc;
    if (!doc) {
      root.append(el('p', { class: 'muted' }, 'open a project first'));
      return;
    }
    root.append(
      el('h2', {}, 'preference statements'),
      statementForm(doc.id),
      committedList(),
    );
  }

  function statementForm(projectId: string): HTMLElement {
    const doc = store.current.doc!;
    const panel = el('div', { class: 'panel', 'data-role': 'statement-form' });

    const kindSelect = el('select', { 'data-role': 'statement-kind' });
    for (const name of Object.keys(STATEMENT_KINDS)) kindSelect.append(option(name));
    kindSelect.value = kind;
    kindSelect.addEventListener('change', () => {
      kind = kindSelect.value;
      render();
    });

    const [domain, arity] = STATEMENT_KINDS[kind];
    const pool =
      domain === 'alternative'
        ? doc.alternatives.map((a) => a.id)
        : doc.criteria.map((c) => c.id);
    const slots: HTMLSelectElement[] = [];
    const slotRow = el('div', { class: 'row' });
    for (let index = 0; index < arity; index += 1) {
      const slot = el('select', { 'data-arg': String(index) });
      for (const id of pool) slot.append(option(id));
      if (pool[index]) slot.value = pool[Math.min(index, pool.length - 1)];
      slots.push(slot);
      slotRow.append(
        el('label', {}, `${SLOT_HINTS[arity]?.[index] ?? index} `, slot),
      );
    }

    const label = el('input', { placeholder: 'label (optional)', 'data-role': 'statement-label' });
    const fieldError = el('span', { class: 'field-error', 'data-role': 'statement-error' });
    const commit = el('button', { 'data-role': 'commit-statement' }, 'commit');
    commit.addEventListener('click', () => {
      fieldError.textContent = '';
      const statement: StatementDoc = {
        kind,
        args: slots.map((s) => s.value),
        label: label.value,
      };
      void store.run(async () => {
        const current = store.current.doc!;
        try {
          await store.api.postStatement(
            projectId, statement, current.version, store.current.token,
          );
        } catch (err) {
          fieldError.textContent = err instanceof Error ? err.message : String(err);
          throw err;
        }
        await store.refresh();
      });
    });

    panel.append(
      el('div', { class: 'row' }, kindSelect, slotRow),
      el('div', { class: 'row' }, label, commit, fieldError),
    );
    return panel;
  }

  function committedList(): HTMLElement {
    const doc = store.current.doc!;
    const panel = el('div', { class: 'panel', 'data-role': 'committed-statements' });
    panel.append(el('h3', {}, `committed (${doc.statements.length})`));
    const list = el('ol', { class: 'statement-list' });
    doc.statements.forEach((statement, index) => {
      const remove = el('button', { 'data-delete-statement': String(index) }, 'delete');
      remove.addEventListener('click', () => {
        void store.run(async () => {
          const current = store.current.doc!;
          await store.api.deleteStatement(
            doc.id, index, current.version, store.current.token,
          );
          await store.refresh();
        });
      });
      list.append(el('li', {}, describeStatement(statement), ' ', remove));
    });
    panel.append(list);
    return panel;
  }

  store.subscribe((state) => {
    if (state.doc !== renderedDoc) render();
  });
  render();
  return root;
}
