/**
 * results.ts - screen 5: what the committed judgments imply.
 *
 * Runs the full computation on demand and renders the bundle: ranking
 * with aggregate values, importance shares as bars, pairwise
 * interactions, and the necessary partial order as a diagram whose
 * edges are exactly the transitive reduction. A toggle reveals the
 * weaker possible relation as a grid, since it need not be an order.
 * When no compatible model exists the diagnosed statements are listed
 * instead of a ranking.
 */

import { ReportBundle, RelationsDoc } from '../api.js';
import { el, clear, svgEl } from '../dom.js';
import { buildHasse } from '../hasse.js';
import {
  describeStatement,
  formatEpsilon,
  formatRank,
  formatValue,
} from '../format.js';
import { AppStore } from '../state.js';

export function createResultsScreen(store: AppStore): HTMLElement {
  const root = el('section', { class: 'screen screen-results' });
  let showPossible = false;

  function render() {
    clear(root);
    const { doc, lastBundle } = store.current;
    if (!doc) {
      root.append(el('p', { class: 'muted' }, 'open a project first'));
      return;
    }

    const solveBtn = el('button', { 'data-role': 'solve' }, 'compute results');
    solveBtn.addEventListener('click', () => {
      void store.run(async () => {
        const bundle = await store.api.solve(doc.id, store.current.token);
        store.patch({ lastBundle: bundle });
      });
    });
    root.append(el('h2', {}, 'results'), el('div', { class: 'row' }, solveBtn));

    if (!lastBundle) {
      root.append(el('p', { class: 'muted' }, 'no results yet'));
      return;
    }
    root.append(bundleView(lastBundle));
  }

  function bundleView(bundle: ReportBundle): HTMLElement {
    const box = el('div', { 'data-role': 'bundle' });

    if (!bundle.has_compatible_model) {
      box.append(
        el('h3', { class: 'conflict-head' }, 'no compatible model'),
        diagnosisList(bundle),
      );
      return box;
    }

    box.append(
      el(
        'p',
        { class: 'muted' },
        `margin ${formatEpsilon(bundle.epsilon_star)}` +
          (bundle.delta === null ? '' : `, spread ${formatValue(bundle.delta)}`),
      ),
      rankingTable(bundle),
      shapleyBars(bundle),
      interactionList(bundle),
    );
    if (bundle.relations) {
      box.append(relationsView(bundle.relations));
    }
    return box;
  }

  function rankingTable(bundle: ReportBundle): HTMLElement {
    const table = el('table', { class: 'grid', 'data-role': 'ranking' });
    table.append(
      el('tr', {}, el('th', {}, 'rank'), el('th', {}, 'alternative'), el('th', {}, 'value')),
    );
    for (const [alternative, value, rank] of bundle.ranking) {
      table.append(
        el(
          'tr',
          { 'data-ranked': alternative },
          el('td', { class: 'rank' }, formatRank(rank)),
          el('td', {}, alternative),
          el('td', {}, formatValue(value)),
        ),
      );
    }
    return table;
  }

  function shapleyBars(bundle: ReportBundle): HTMLElement {
    const panel = el('div', { class: 'panel', 'data-role': 'shapley' });
    panel.append(el('h3', {}, 'criterion importance'));
    const largest = Math.max(...bundle.shapley.map(([, v]) => Math.abs(v)), 1e-12);
    for (const [criterion, value] of bundle.shapley) {
      const width = Math.round((Math.abs(value) / largest) * 240);
      panel.append(
        el(
          'div',
          { class: 'bar-row' },
          el('span', { class: 'bar-label' }, criterion),
          el('span', {
            class: 'bar',
            style: `width:${width}px`,
            'data-shapley': criterion,
            title: formatValue(value),
          }),
          el('span', { class: 'bar-value' }, formatValue(value)),
        ),
      );
    }
    return panel;
  }

  function interactionList(bundle: ReportBundle): HTMLElement {
    const panel = el('div', { class: 'panel', 'data-role': 'interactions' });
    panel.append(el('h3', {}, 'pairwise interactions'));
    const list = el('ul');
    for (const [a, b, value] of bundle.interactions) {
      if (Math.abs(value) < 5e-5) continue; // rounds to 0.0000
      list.append(el('li', {}, `${a} and ${b}: ${formatValue(value)}`));
    }
    if (!list.childElementCount) list.append(el('li', { class: 'muted' }, 'none'));
    panel.append(list);
    return panel;
  }

  function relationsView(relations: RelationsDoc): HTMLElement {
    const panel = el('div', { class: 'panel', 'data-role': 'relations' });
    panel.append(el('h3', {}, 'robust order'));

    const toggle = el('input', { type: 'checkbox', 'data-role': 'possible-toggle' });
    toggle.checked = showPossible;
    toggle.addEventListener('change', () => {
      showPossible = toggle.checked;
      render();
    });
    panel.append(el('label', {}, toggle, ' show possible relation'));

    panel.append(hasseSvg(relations));
    if (showPossible) panel.append(possibleGrid(relations));
    return panel;
  }

  function diagnosisList(bundle: ReportBundle): HTMLElement {
    const panel = el('div', { class: 'panel conflict', 'data-role': 'diagnosis' });
    panel.append(
      el('p', {}, 'smallest set of statements whose removal restores compatibility:'),
    );
    const list = el('ul');
    for (const statement of bundle.diagnosis ?? []) {
      list.append(el('li', {}, describeStatement(statement)));
    }
    panel.append(list);
    return panel;
  }

  store.subscribe(() => render());
  render();
  return root;
}

// ── Relation rendering ────────────────────────────────────────────────

const NODE_W = 86;
const NODE_H = 26;
const GAP_X = 20;
const GAP_Y = 56;

/** Layered drawing of the necessary relation's transitive reduction. */
export function hasseSvg(relations: RelationsDoc): HTMLElement {
  const diagram = buildHasse(relations.alternatives, relations.necessary);
  const widest = Math.max(...diagram.layers.map((layer) => layer.length), 1);
  const width = widest * (NODE_W + GAP_X) + GAP_X;
  const height = diagram.layers.length * (NODE_H + GAP_Y) + GAP_Y - NODE_H;

  const holder = el('div', { class: 'hasse', 'data-role': 'hasse' });
  const svg = svgEl('svg', {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: 'img',
  });

  // top layer = maximal elements; coordinates per node
  const place = new Map<string, { x: number; y: number }>();
  diagram.layers.forEach((layer, depth) => {
    const rowWidth = layer.length * (NODE_W + GAP_X) - GAP_X;
    const left = (width - rowWidth) / 2;
    layer.forEach((id, i) => {
      place.set(id, {
        x: left + i * (NODE_W + GAP_X) + NODE_W / 2,
        y: GAP_Y / 2 + depth * (NODE_H + GAP_Y) + NODE_H / 2,
      });
    });
  });

  for (const edge of diagram.edges) {
    const from = place.get(edge.from)!;
    const to = place.get(edge.to)!;
    svg.append(
      svgEl('line', {
        x1: String(from.x),
        y1: String(from.y + NODE_H / 2),
        x2: String(to.x),
        y2: String(to.y - NODE_H / 2),
        class: 'hasse-edge',
        'data-edge': `${edge.from}>${edge.to}`,
      }),
    );
  }

  for (const node of diagram.nodes) {
    const at = place.get(node.id)!;
    svg.append(
      svgEl('rect', {
        x: String(at.x - NODE_W / 2),
        y: String(at.y - NODE_H / 2),
        width: String(NODE_W),
        height: String(NODE_H),
        rx: '4',
        class: 'hasse-node',
        'data-node': node.id,
      }),
    );
    const text = svgEl('text', {
      x: String(at.x),
      y: String(at.y + 4),
      'text-anchor': 'middle',
      class: 'hasse-text',
    });
    text.textContent = node.id;
    svg.append(text);
  }

  holder.append(svg);
  return holder;
}

/** The possible relation as a plain grid; it can contain cycles. */
export function possibleGrid(relations: RelationsDoc): HTMLElement {
  const table = el('table', { class: 'grid possible-grid', 'data-role': 'possible' });
  const head = el('tr', {}, el('th'));
  for (const alt of relations.alternatives) head.append(el('th', {}, alt));
  table.append(head);
  relations.alternatives.forEach((row, i) => {
    const tr = el('tr', {}, el('th', {}, row));
    relations.alternatives.forEach((_, j) => {
      tr.append(el('td', {}, relations.possible[i][j] ? 'X' : '.'));
    });
    table.append(tr);
  });
  return table;
}
