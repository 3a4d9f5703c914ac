/**
 * matrix.ts - screen 3: pairwise judgments on reference levels.
 *
 * One upper-triangle grid per criterion. Each cell offers the verbal
 * nine-point scale (intermediate grades behind a fine-grain toggle);
 * every edit sends the whole matrix and repaints from the response:
 * the consistency gauge, the offending judgment triples when the
 * ratio crosses the acceptability threshold, and the interpolation
 * curve. The reciprocal half and the diagonal are implied and shown
 * read-only.
 */

import { MatrixPutResult, ProjectDocument } from '../api.js';
import { drawScaleCurve } from '../curve.js';
import { el, clear, option } from '../dom.js';
import { formatRatio, judgmentOptions, judgmentText } from '../format.js';
import { AppStore } from '../state.js';

export function createMatrixScreen(store: AppStore): HTMLElement {
  const root = el('section', { class: 'screen screen-matrix' });
  let selected: string | null = null;
  let fineGrain = false;
  let lastPut: MatrixPutResult | null = null;
  let renderedDoc: ProjectDocument | null = null;

  function render() {
    clear(root);
    const { doc } = store.current;
    renderedDoc = doc;
    if (!doc) {
      root.append(el('p', { class: 'muted' }, 'open a project first'));
      return;
    }
    const judged = doc.criteria.filter((c) => (doc.references[c.id] ?? []).length >= 2);
    if (!judged.length) {
      root.append(el('p', { class: 'muted' }, 'set reference levels first'));
      return;
    }
    if (!selected || !judged.some((c) => c.id === selected)) {
      selected = judged[0].id;
    }

    const picker = el('select', { 'data-role': 'matrix-criterion' });
    for (const c of judged) picker.append(option(c.id, `${c.id} ${c.name}`.trim()));
    picker.value = selected;
    picker.addEventListener('change', () => {
      selected = picker.value;
      lastPut = null;
      render();
    });

    const fineToggle = el('input', { type: 'checkbox', 'data-role': 'fine-grain' });
    fineToggle.checked = fineGrain;
    fineToggle.addEventListener('change', () => {
      fineGrain = fineToggle.checked;
      render();
    });

    root.append(
      el('h2', {}, 'pairwise judgments'),
      el(
        'div',
        { class: 'row' },
        picker,
        el('label', {}, fineToggle, ' show in-between grades'),
      ),
      gridFor(doc, selected),
    );
  }

  function gridFor(doc: ProjectDocument, cid: string): HTMLElement {
    const items = doc.references[cid] ?? [];
    const n = items.length;

    // working copy of the upper triangle, seeded from the document
    const cells = new Map<string, [number, number]>();
    const stored = doc.matrices[cid];
    const storedIndex = new Map<string, number>();
    stored?.items.forEach((item, i) => storedIndex.set(item, i));
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        let entry: [number, number] = [1, 1];
        const si = storedIndex.get(items[i]);
        const sj = storedIndex.get(items[j]);
        if (stored && si !== undefined && sj !== undefined) {
          entry = stored.rows[si][sj];
        }
        cells.set(`${i}:${j}`, entry);
      }
    }

    const box = el('div', { class: 'panel' });
    const gauge = el('span', { class: 'gauge', 'data-role': 'cr-gauge' }, 'CR -');
    const curveHolder = el('div', { 'data-role': 'curve-holder' });
    const table = el('table', { class: 'grid matrix-grid' });

    function rowsFromCells(): [number, number][][] {
      const rows: [number, number][][] = [];
      for (let i = 0; i < n; i += 1) {
        const row: [number, number][] = [];
        for (let j = 0; j < n; j += 1) {
          if (i === j) row.push([1, 1]);
          else if (i < j) row.push(cells.get(`${i}:${j}`)!);
          else {
            const [num, den] = cells.get(`${j}:${i}`)!;
            row.push([den, num]);
          }
        }
        rows.push(row);
      }
      return rows;
    }

    function paintGauge(result: MatrixPutResult | null) {
      // offending-cell marks are recomputed wholesale on every response
      for (const marked of Array.from(table.querySelectorAll('.offending'))) {
        marked.classList.remove('offending');
      }
      if (!result) {
        gauge.textContent = 'CR -';
        gauge.className = 'gauge';
        return;
      }
      const { consistency_ratio: ratio, acceptable } = result.consistency;
      gauge.textContent = `CR ${formatRatio(ratio)}`;
      gauge.className = acceptable ? 'gauge acceptable' : 'gauge red';
      if (!acceptable) {
        for (const [r, s, t] of result.triads) {
          for (const key of [`${r}:${s}`, `${r}:${t}`, `${s}:${t}`]) {
            table.querySelector(`[data-cell-holder="${key}"]`)?.classList.add('offending');
          }
        }
      }
    }

    async function push() {
      const current = store.current.doc!;
      const result = await store.api.putMatrix(
        current.id,
        cid,
        { items, rows: rowsFromCells() },
        current.version,
        store.current.token,
      );
      lastPut = result;
      paintGauge(result);
      await store.refresh(); // rerenders the grid and its curve preview
    }

    // curve preview from the latest accepted values
    async function loadCurve() {
      try {
        const scales = await store.api.normalize(doc.id);
        clear(curveHolder);
        const scale = scales.scales[cid];
        if (scale) curveHolder.append(drawScaleCurve(cid, scale));
      } catch {
        clear(curveHolder); // scales not derivable yet
      }
    }

    const head = el('tr', {}, el('th'));
    for (const item of items) head.append(el('th', {}, item));
    table.append(head);

    for (let i = 0; i < n; i += 1) {
      const tr = el('tr', {}, el('th', {}, items[i]));
      for (let j = 0; j < n; j += 1) {
        if (i === j) {
          tr.append(el('td', { class: 'diagonal' }, '1'));
          continue;
        }
        if (i > j) {
          const [num, den] = cells.get(`${j}:${i}`)!;
          tr.append(el('td', { class: 'mirror' }, judgmentText(den, num)));
          continue;
        }
        const key = `${i}:${j}`;
        const select = el('select', { 'data-cell': key });
        const [num, den] = cells.get(key)!;
        const currentValue = `${num}/${den}`;
        let listed = false;
        for (const opt of judgmentOptions()) {
          const value = `${opt.num}/${opt.den}`;
          if (opt.fineGrain && !fineGrain && value !== currentValue) continue;
          if (value === currentValue) listed = true;
          select.append(option(value, opt.label));
        }
        if (!listed) select.append(option(currentValue, judgmentText(num, den)));
        select.value = currentValue;
        select.addEventListener('change', () => {
          const [a, b] = select.value.split('/').map(Number);
          if (!Number.isFinite(a) || !Number.isFinite(b) || a <= 0 || b <= 0) {
            return; // not a listed judgment; leave the cell alone
          }
          cells.set(key, [a, b]);
          void store.run(push);
        });
        tr.append(el('td', { 'data-cell-holder': key }, select));
      }
      table.append(tr);
    }

    box.append(el('div', { class: 'row' }, gauge), table, curveHolder);
    paintGauge(lastPut);
    void store.run(loadCurve);
    return box;
  }

  store.subscribe((state) => {
    if (state.doc !== renderedDoc) render();
  });
  render();
  return root;
}
