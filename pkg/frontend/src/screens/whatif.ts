/**
 * whatif.ts - screen 6: tentative statements without commitment.
 *
 * Statements staged here never reach the stored project until the
 * decision maker commits them; previews run server-side against
 * committed + staged together and race under a request id, so a slow
 * older preview can never paint over a newer one. The side-by-side
 * view contrasts the current ranking with the previewed one, and an
 * infeasible staging shows the diagnosed statements instead.
 */

import { ProjectDocument, ReportBundle, StatementDoc } from '../api.js';
import { el, clear, option } from '../dom.js';
import { describeStatement, formatRank } from '../format.js';
import { AppStore } from '../state.js';
import { STATEMENT_KINDS } from './statements.js';

interface RankSnapshot {
  order: string[]; // alternatives by rank
  rank: Map<string, number>;
}

export function createWhatifScreen(store: AppStore): HTMLElement {
  const root = el('section', { class: 'screen screen-whatif' });
  let kind = 'strict_pref';
  let preview: ReportBundle | null = null;
  let baseline: RankSnapshot | null = null;
  let baselineVersion = -1;
  let renderedDoc: ProjectDocument | null = null;

  function snapshotFromRanking(rows: [string, unknown, number][]): RankSnapshot {
    const order = [...rows].sort((a, b) => a[2] - b[2]).map((r) => r[0]);
    const rank = new Map(rows.map((r) => [r[0], r[2]] as [string, number]));
    return { order, rank };
  }

  /** Current standing: last closed round, else a preview of committed only. */
  async function loadBaseline(): Promise<void> {
    const doc = store.current.doc!;
    if (baseline && baselineVersion === doc.version) return;
    const lastRound = doc.rounds[doc.rounds.length - 1];
    if (lastRound && lastRound.ranking.length) {
      baseline = snapshotFromRanking(lastRound.ranking);
    } else {
      const bundle = await store.api.whatif(doc.id, doc.statements);
      baseline = bundle.has_compatible_model
        ? snapshotFromRanking(bundle.ranking)
        : null;
    }
    baselineVersion = doc.version;
  }

  function render() {
    clear(root);
    const { doc, staged } = store.current;
    renderedDoc = doc;
    if (!doc) {
      root.append(el('p', { class: 'muted' }, 'open a project first'));
      return;
    }
    root.append(
      el('h2', {}, 'what-if exploration'),
      stagingForm(),
      stagedList(staged),
      previewPanel(),
    );
  }

  function stagingForm(): HTMLElement {
    const doc = store.current.doc!;
    const panel = el('div', { class: 'panel', 'data-role': 'staging-form' });

    const kindSelect = el('select', { 'data-role': 'whatif-kind' });
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
    const slotRow = el('span');
    for (let index = 0; index < arity; index += 1) {
      const slot = el('select', { 'data-whatif-arg': String(index) });
      for (const id of pool) slot.append(option(id));
      slots.push(slot);
      slotRow.append(slot);
    }

    const stageBtn = el('button', { 'data-role': 'stage' }, 'stage');
    stageBtn.addEventListener('click', () => {
      store.stage({ kind, args: slots.map((s) => s.value), label: '' });
      render();
    });

    panel.append(el('div', { class: 'row' }, kindSelect, slotRow, stageBtn));
    return panel;
  }

  function stagedList(staged: StatementDoc[]): HTMLElement {
    const panel = el('div', { class: 'panel', 'data-role': 'staged-statements' });
    panel.append(el('h3', {}, `staged (${staged.length})`));
    const list = el('ul', { class: 'statement-list' });
    staged.forEach((statement, index) => {
      const drop = el('button', { 'data-unstage': String(index) }, 'remove');
      drop.addEventListener('click', () => {
        store.unstage(index);
        preview = null;
        render();
      });
      list.append(
        el('li', { class: 'staged' }, describeStatement(statement), ' ', drop),
      );
    });
    panel.append(list);

    const previewBtn = el('button', { 'data-role': 'preview' }, 'preview');
    previewBtn.addEventListener('click', () => {
      void store.run(async () => {
        await loadBaseline();
        const bundle = await store.preview();
        if (bundle) {
          // null means a newer preview superseded this one
          preview = bundle;
          render();
        }
      });
    });

    const commitBtn = el('button', { 'data-role': 'commit-staged' }, 'commit all');
    commitBtn.addEventListener('click', () => {
      void store.run(async () => {
        // one at a time, so a failure keeps the remainder staged
        while (store.current.staged.length) {
          const statement = store.current.staged[0];
          const current = store.current.doc!;
          await store.api.postStatement(
            current.id, statement, current.version, store.current.token,
          );
          store.unstage(0);
          await store.refresh();
        }
        preview = null;
        render();
      });
    });

    const discardBtn = el('button', { 'data-role': 'discard-staged' }, 'discard');
    discardBtn.addEventListener('click', () => {
      store.discardStaged();
      preview = null;
      render();
    });

    panel.append(el('div', { class: 'row' }, previewBtn, commitBtn, discardBtn));
    return panel;
  }

  function previewPanel(): HTMLElement {
    const panel = el('div', { class: 'panel', 'data-role': 'whatif-preview' });
    panel.append(el('h3', {}, 'preview'));
    if (!preview) {
      panel.append(el('p', { class: 'muted' }, 'stage statements and preview'));
      return panel;
    }

    if (!preview.has_compatible_model) {
      const conflict = el('div', { class: 'conflict', 'data-role': 'whatif-diagnosis' });
      conflict.append(
        el('p', {}, 'staged statements contradict the committed ones; nothing was saved'),
      );
      const list = el('ul');
      for (const statement of preview.diagnosis ?? []) {
        list.append(el('li', {}, describeStatement(statement)));
      }
      conflict.append(list);
      panel.append(conflict);
      return panel;
    }

    const next = snapshotFromRanking(preview.ranking);
    const table = el('table', { class: 'grid', 'data-role': 'delta-table' });
    table.append(
      el(
        'tr',
        {},
        el('th', {}, 'alternative'),
        el('th', {}, 'now'),
        el('th', {}, 'previewed'),
        el('th', {}, 'shift'),
      ),
    );
    for (const alternative of next.order) {
      const was = baseline?.rank.get(alternative);
      const now = next.rank.get(alternative)!;
      let shift = '';
      if (was !== undefined && was !== now) {
        shift = was > now ? `up ${was - now}` : `down ${now - was}`;
      }
      table.append(
        el(
          'tr',
          { 'data-delta': alternative },
          el('td', {}, alternative),
          el('td', {}, was === undefined ? '-' : formatRank(was)),
          el('td', {}, formatRank(now)),
          el('td', { class: shift.startsWith('up') ? 'up' : shift ? 'down' : '' }, shift),
        ),
      );
    }
    panel.append(table);
    return panel;
  }

  store.subscribe((state) => {
    if (state.doc !== renderedDoc) render();
  });
  render();
  return root;
}
